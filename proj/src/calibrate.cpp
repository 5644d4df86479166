#include "svlab/calibrate.hpp"

#include "svlab/error.hpp"
#include "svlab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace svlab {

void validate(const PriceSeries& prices, std::size_t min_length) {
    if (prices.dates.size() != prices.closes.size()) {
        throw Error(ErrorCode::InvalidSeries, "dates and closes differ in length");
    }
    if (prices.closes.size() < min_length) {
        throw Error(ErrorCode::InvalidSeries, "price series has " + std::to_string(prices.closes.size()) +
                                                  " rows, need >= " + std::to_string(min_length));
    }
    for (std::size_t i = 0; i < prices.closes.size(); ++i) {
        if (!(prices.closes[i] > 0.0) || !std::isfinite(prices.closes[i])) {
            throw Error(ErrorCode::InvalidSeries, "non-positive close at row " + std::to_string(i));
        }
        if (i > 0 && !(prices.dates[i - 1] < prices.dates[i])) {
            throw Error(ErrorCode::InvalidSeries, "dates not strictly increasing at row " + std::to_string(i));
        }
    }
}

std::vector<double> log_returns(const PriceSeries& prices) {
    validate(prices, 2);
    std::vector<double> r(prices.closes.size() - 1);
    for (std::size_t i = 1; i < prices.closes.size(); ++i) r[i - 1] = std::log(prices.closes[i] / prices.closes[i - 1]);
    return r;
}

std::vector<double> volatility_proxy(const PriceSeries& prices) {
    auto r = log_returns(prices);
    const double mu = sample_mean(r);
    for (double& v : r) v = std::abs(v - mu);
    return r;
}

double log_likelihood(const DensityFamily& family, std::span<const double> samples) {
    double sum = 0.0;
    for (double v : samples) sum += log_pdf(family, v);
    return sum;
}

DensityFamily moment_start(FamilyKind kind, std::span<const double> samples) {
    const auto m = sample_moments(samples);
    const double sd = std::sqrt(m.variance);
    switch (kind) {
    case FamilyKind::Normal: return NormalDensity{m.mean, sd};
    case FamilyKind::Gamma: return GammaDensity{m.mean * m.mean / m.variance, m.variance / m.mean};
    case FamilyKind::LogNormal: {
        const double s2 = std::log1p(m.variance / (m.mean * m.mean));
        return LogNormalDensity{std::log(m.mean) - 0.5 * s2, std::sqrt(s2)};
    }
    case FamilyKind::StudentT: {
        const double dof = m.excess_kurtosis > 0.0 ? 4.0 + 6.0 / m.excess_kurtosis : 30.0;
        return StudentTDensity{quantile(samples, 0.5), sd * std::sqrt((dof - 2.0) / dof), dof};
    }
    }
    throw Error(ErrorCode::InvalidParams, "unknown family");
}

namespace {

std::vector<double> to_theta(const DensityFamily& family) {
    return std::visit(
        [](const auto& d) -> std::vector<double> {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, NormalDensity>) return {d.mean, std::log(d.std)};
            if constexpr (std::is_same_v<T, GammaDensity>) return {std::log(d.shape), std::log(d.scale)};
            if constexpr (std::is_same_v<T, LogNormalDensity>) return {d.log_mean, std::log(d.log_std)};
            if constexpr (std::is_same_v<T, StudentTDensity>) {
                return {d.location, std::log(d.scale), std::log(std::max(d.dof - 0.5, 1e-6))};
            }
        },
        family);
}

DensityFamily from_theta(FamilyKind kind, const std::vector<double>& t) {
    switch (kind) {
    case FamilyKind::Normal: return NormalDensity{t[0], std::exp(t[1])};
    case FamilyKind::Gamma: return GammaDensity{std::exp(t[0]), std::exp(t[1])};
    case FamilyKind::LogNormal: return LogNormalDensity{t[0], std::exp(t[1])};
    case FamilyKind::StudentT: return StudentTDensity{t[0], std::exp(t[1]), 0.5 + std::exp(t[2])};
    }
    throw Error(ErrorCode::InvalidParams, "unknown family");
}

// Closed-form log-likelihoods from sufficient statistics where they exist.
struct SufficientStats {
    double n = 0.0;
    double sum = 0.0;
    double sum_log = 0.0;
    double sum_log_sq = 0.0;
};

double fast_loglik(FamilyKind kind, const DensityFamily& family, const SufficientStats& s,
                   std::span<const double> samples) {
    switch (kind) {
    case FamilyKind::Gamma: {
        const auto& g = std::get<GammaDensity>(family);
        return (g.shape - 1.0) * s.sum_log - s.sum / g.scale - s.n * (std::lgamma(g.shape) + g.shape * std::log(g.scale));
    }
    case FamilyKind::LogNormal: {
        const auto& l = std::get<LogNormalDensity>(family);
        const double ss = s.sum_log_sq - 2.0 * l.log_mean * s.sum_log + s.n * l.log_mean * l.log_mean;
        return -0.5 * ss / (l.log_std * l.log_std) - s.n * (std::log(l.log_std) + 0.5 * std::log(2.0 * std::numbers::pi)) -
               s.sum_log;
    }
    default: return log_likelihood(family, samples);
    }
}

} // namespace

FitResult fit_mle(FamilyKind kind, std::span<const double> samples, const FitOptions& options) {
    if (samples.size() < 2) {
        throw Error(ErrorCode::InsufficientData, "fit needs >= 2 samples, got " + std::to_string(samples.size()));
    }
    for (double v : samples) {
        if (!std::isfinite(v)) throw Error(ErrorCode::DomainError, "non-finite sample");
    }
    if (kind == FamilyKind::Gamma || kind == FamilyKind::LogNormal) {
        for (double v : samples) {
            if (!(v > 0.0)) {
                throw Error(ErrorCode::DomainError, std::string(to_string(kind)) + " fit needs samples > 0");
            }
        }
    }

    FitResult result;
    result.n_samples = samples.size();
    if (samples.size() < 30) {
        result.warnings.push_back("only " + std::to_string(samples.size()) + " samples (< 30)");
    }
    const double n = static_cast<double>(samples.size());

    if (kind == FamilyKind::Normal) {
        const double mu = sample_mean(samples);
        double ss = 0.0;
        for (double v : samples) ss += (v - mu) * (v - mu);
        const double sd = std::sqrt(ss / n);
        if (!(sd > 0.0)) throw Error(ErrorCode::DomainError, "normal fit of a constant sample");
        result.family = NormalDensity{mu, sd};
        result.loglik = -0.5 * n * (std::log(2.0 * std::numbers::pi * sd * sd) + 1.0);
        result.converged = true;
    } else {
        SufficientStats stats;
        stats.n = n;
        for (double v : samples) {
            stats.sum += v;
            if (v > 0.0) {
                const double lv = std::log(v);
                stats.sum_log += lv;
                stats.sum_log_sq += lv * lv;
            }
        }
        if (samples.size() < 4) throw Error(ErrorCode::InsufficientData, "iterative fit needs >= 4 samples");
        const auto start = moment_start(kind, samples);
        const auto objective = [&](const std::vector<double>& theta) {
            return -fast_loglik(kind, from_theta(kind, theta), stats, samples);
        };
        const auto nm = nelder_mead(objective, to_theta(start), options.optimizer);
        result.family = from_theta(kind, nm.argmin);
        result.loglik = log_likelihood(result.family, samples);
        result.converged = nm.converged && std::isfinite(result.loglik);
        result.n_evals = nm.n_evals;
        if (!nm.converged) result.warnings.push_back("optimizer stopped at max_evals before converging");
    }
    result.aic = 2.0 * parameter_count(kind) - 2.0 * result.loglik;
    return result;
}

FitReport fit_ranked(std::span<const FamilyKind> families, std::span<const double> samples, const FitOptions& options) {
    FitReport report;
    for (auto kind : families) {
        try {
            report.ranked.push_back(fit_mle(kind, samples, options));
        } catch (const Error& e) {
            report.failures.push_back({kind, e.what()});
        }
    }
    std::stable_sort(report.ranked.begin(), report.ranked.end(),
                     [](const FitResult& a, const FitResult& b) { return a.loglik > b.loglik; });
    return report;
}

FitReport fit_volatility_all(const PriceSeries& prices, const FitOptions& options) {
    validate(prices);
    const auto proxy = volatility_proxy(prices);
    constexpr FamilyKind kFamilies[] = {FamilyKind::Normal, FamilyKind::Gamma, FamilyKind::LogNormal};
    return fit_ranked(kFamilies, proxy, options);
}

FitReport fit_returns(const PriceSeries& prices, std::span<const FamilyKind> families, const FitOptions& options) {
    validate(prices);
    auto r = log_returns(prices);
    const double mu = sample_mean(r);
    for (double& v : r) v -= mu;
    return fit_ranked(families, r, options);
}

HorizonReturns horizon_returns(const PriceSeries& prices, std::size_t horizon) {
    validate(prices, 2);
    if (horizon < 1) throw Error(ErrorCode::InvalidParams, "horizon must be >= 1 day");
    const std::size_t n = prices.closes.size();
    if (n <= horizon) {
        throw Error(ErrorCode::InsufficientData, "series shorter than horizon " + std::to_string(horizon));
    }
    std::vector<double> logp(n);
    for (std::size_t i = 0; i < n; ++i) logp[i] = std::log(prices.closes[i]);

    HorizonReturns out;
    out.horizon = horizon;
    const std::size_t windows = (n - 1) / horizon;
    if (windows >= 100) {
        for (std::size_t w = 0; w < windows; ++w) out.returns.push_back(logp[(w + 1) * horizon] - logp[w * horizon]);
        out.effective_sample_size = static_cast<double>(windows);
    } else {
        out.overlapping = true;
        for (std::size_t t = 0; t + horizon < n; ++t) out.returns.push_back(logp[t + horizon] - logp[t]);
        out.effective_sample_size = static_cast<double>(n - 1) / static_cast<double>(horizon);
    }
    if (out.returns.size() < 2) throw Error(ErrorCode::InsufficientData, "fewer than 2 windows");
    const double mu = sample_mean(out.returns);
    for (double& v : out.returns) v -= mu;
    return out;
}

std::vector<EmpiricalDensity> multi_horizon_densities(const PriceSeries& prices, std::span<const std::size_t> horizons,
                                                      const DensityOptions& options) {
    if (horizons.empty()) throw Error(ErrorCode::InvalidParams, "no horizons requested");
    std::vector<EmpiricalDensity> out;
    for (auto h : horizons) {
        const auto hr = horizon_returns(prices, h);
        auto density = density_from_samples(hr.returns, options);
        density.effective_sample_size = hr.effective_sample_size;
        if (hr.overlapping) {
            density.warnings.push_back("horizon " + std::to_string(h) +
                                       ": fewer than 100 non-overlapping windows, overlapping windows used");
        }
        out.push_back(std::move(density));
    }
    return out;
}

PriceSeries prices_from_path(const PathSet& paths, std::size_t path, std::chrono::sys_days start, std::string symbol) {
    using std::chrono::days;
    using std::chrono::weekday;
    PriceSeries out;
    out.symbol = std::move(symbol);
    auto date = start;
    auto skip_weekend = [](std::chrono::sys_days d) {
        while (weekday(d) == std::chrono::Saturday || weekday(d) == std::chrono::Sunday) d += days(1);
        return d;
    };
    date = skip_weekend(date);
    for (std::size_t c = 0; c < paths.n_recorded(); ++c) {
        out.dates.push_back(date);
        out.closes.push_back(log_return_to_price(paths.x(path, c), paths.time_of(c), paths.params,
                                                 paths.integrated_var(path, c)));
        date = skip_weekend(date + days(1));
    }
    return out;
}

} // namespace svlab
