#include "svlab/stats.hpp"

#include "svlab/error.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace svlab {

double sample_mean(std::span<const double> samples) {
    if (samples.empty()) throw Error(ErrorCode::InsufficientData, "mean of an empty sample");
    double sum = 0.0;
    for (double v : samples) sum += v;
    return sum / static_cast<double>(samples.size());
}

double sample_variance(std::span<const double> samples) {
    if (samples.size() < 2) throw Error(ErrorCode::InsufficientData, "variance needs >= 2 samples");
    const double mu = sample_mean(samples);
    double ss = 0.0;
    for (double v : samples) ss += (v - mu) * (v - mu);
    return ss / static_cast<double>(samples.size() - 1);
}

Moments sample_moments(std::span<const double> samples) {
    if (samples.size() < 4) throw Error(ErrorCode::InsufficientData, "moments need >= 4 samples");
    const double n = static_cast<double>(samples.size());
    const double mu = sample_mean(samples);
    double m2 = 0.0;
    double m3 = 0.0;
    double m4 = 0.0;
    for (double v : samples) {
        const double d = v - mu;
        const double d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;
    Moments out;
    out.mean = mu;
    out.variance = m2 * n / (n - 1.0);
    if (m2 > 0.0) {
        out.skewness = m3 / std::pow(m2, 1.5);
        out.excess_kurtosis = m4 / (m2 * m2) - 3.0;
    }
    return out;
}

double quantile(std::span<const double> samples, double q) {
    if (samples.empty()) throw Error(ErrorCode::InsufficientData, "quantile of an empty sample");
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    const double pos = std::clamp(q, 0.0, 1.0) * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

double ks_statistic(std::span<const double> samples, const std::function<double(double)>& cdf) {
    if (samples.empty()) throw Error(ErrorCode::InsufficientData, "KS statistic of an empty sample");
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = cdf(sorted[i]);
        d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
    }
    return d;
}

double ks_pvalue(double statistic, std::size_t n) {
    const double rn = std::sqrt(static_cast<double>(n));
    const double lambda = (rn + 0.12 + 0.11 / rn) * statistic;
    if (lambda < 1e-3) return 1.0;
    double sum = 0.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = std::exp(-2.0 * k * k * lambda * lambda);
        sum += (k % 2 ? 1.0 : -1.0) * term;
        if (term < 1e-16) break;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

double batch_means_stderr(std::span<const double> series, std::size_t n_batches) {
    const std::size_t batch = series.size() / n_batches;
    if (batch < 1 || n_batches < 2) throw Error(ErrorCode::InsufficientData, "too few samples for batch means");
    std::vector<double> means(n_batches);
    for (std::size_t b = 0; b < n_batches; ++b) {
        means[b] = sample_mean(series.subspan(b * batch, batch));
    }
    return std::sqrt(sample_variance(means) / static_cast<double>(n_batches));
}

} // namespace svlab
