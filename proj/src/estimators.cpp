#include "svlab/estimators.hpp"

#include "svlab/error.hpp"
#include "svlab/fft.hpp"
#include "svlab/parallel.hpp"
#include "svlab/random.hpp"
#include "svlab/simulate.hpp"
#include "svlab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace svlab {

void validate(const ReturnSeries& series) {
    if (series.dx.size() < 2) throw Error(ErrorCode::InvalidSeries, "return series needs >= 2 entries");
    if (!(series.dt > 0.0)) throw Error(ErrorCode::InvalidSeries, "return series dt must be > 0");
    for (std::size_t i = 0; i < series.dx.size(); ++i) {
        if (!std::isfinite(series.dx[i])) {
            throw Error(ErrorCode::InvalidSeries, "non-finite increment at index " + std::to_string(i));
        }
    }
}

ReturnSeries reversed(const ReturnSeries& series) {
    ReturnSeries out = series;
    std::reverse(out.dx.begin(), out.dx.end());
    return out;
}

std::size_t block_length_for(const ModelParams& params, double dt) {
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(10.0 / (params.alpha * dt))));
}

namespace {

// Lagged statistic that is a smooth function of means over base indices
// t in [0, n - max_lag): per-lag sums of pair products plus auxiliary sums.
// Both correlation estimators fit this shape, which lets the bootstrap
// resample base indices in blocks without building resampled series.
struct LaggedSums {
    std::vector<double> pair;  // sum over t of product(t, t + j), per lag
    double s2 = 0.0;           // sum of dx^2
    double s4 = 0.0;           // sum of dx^4
    double count = 0.0;
};

enum class Statistic { Leverage, Autocorr };

double pair_product(Statistic stat, const std::vector<double>& dx, std::size_t t, std::size_t j) {
    const double ahead = dx[t + j] * dx[t + j];
    return stat == Statistic::Leverage ? ahead * dx[t] : ahead * dx[t] * dx[t];
}

std::vector<double> finish(Statistic stat, const LaggedSums& sums, const std::vector<double>& pair_counts) {
    const double m2 = sums.s2 / sums.count;
    const double m4 = sums.s4 / sums.count;
    std::vector<double> values(sums.pair.size());
    for (std::size_t j = 0; j < values.size(); ++j) {
        const double mean_pair = sums.pair[j] / pair_counts[j];
        values[j] = stat == Statistic::Leverage ? mean_pair / (m2 * m2) : (mean_pair - m2 * m2) / (m4 - m2 * m2);
    }
    return values;
}

CorrelationCurve estimate_lagged(Statistic stat, const ReturnSeries& series, std::size_t max_lag,
                                 const BootstrapOptions& options) {
    validate(series);
    const auto& dx = series.dx;
    const std::size_t n = dx.size();
    if (max_lag < 1) throw Error(ErrorCode::InvalidParams, "max_lag must be >= 1");
    if (n < 2 * max_lag) {
        throw Error(ErrorCode::InsufficientData, "series of length " + std::to_string(n) +
                                                     " is shorter than 2 * max_lag = " +
                                                     std::to_string(2 * max_lag));
    }
    CorrelationCurve curve;
    if (n < 10 * max_lag) {
        curve.warnings.push_back("series length " + std::to_string(n) + " is below 10 * max_lag");
    }

    // Point estimate: every available pair per lag, moments over the whole series.
    LaggedSums full;
    full.pair.assign(max_lag, 0.0);
    std::vector<double> full_counts(max_lag);
    for (double v : dx) {
        full.s2 += v * v;
        full.s4 += v * v * v * v;
    }
    full.count = static_cast<double>(n);
    for (std::size_t j = 1; j <= max_lag; ++j) {
        double sum = 0.0;
        for (std::size_t t = 0; t + j < n; ++t) sum += pair_product(stat, dx, t, j);
        full.pair[j - 1] = sum;
        full_counts[j - 1] = static_cast<double>(n - j);
    }
    curve.values = finish(stat, full, full_counts);
    curve.lags.resize(max_lag);
    for (std::size_t j = 1; j <= max_lag; ++j) curve.lags[j - 1] = static_cast<double>(j) * series.dt;

    // Moving-block bootstrap over base indices t in [0, base).
    const std::size_t base = n - max_lag;
    const std::size_t block = std::clamp<std::size_t>(options.block_length ? options.block_length : 10 * max_lag,
                                                      1, base);
    const std::size_t n_blocks = (base + block - 1) / block;
    std::vector<std::vector<double>> replicates(options.resamples);
    parallel_for(options.resamples, options.workers, [&](std::size_t r) {
        RandomStream rng(options.seed, 0x626f6f74ull + r);
        LaggedSums sums;
        sums.pair.assign(max_lag, 0.0);
        std::size_t taken = 0;
        for (std::size_t b = 0; b < n_blocks && taken < base; ++b) {
            const auto start = static_cast<std::size_t>(rng.uniform() * static_cast<double>(base - block + 1));
            const std::size_t len = std::min(block, base - taken);
            for (std::size_t t = start; t < start + len; ++t) {
                const double v2 = dx[t] * dx[t];
                sums.s2 += v2;
                sums.s4 += v2 * v2;
                for (std::size_t j = 1; j <= max_lag; ++j) sums.pair[j - 1] += pair_product(stat, dx, t, j);
            }
            taken += len;
        }
        sums.count = static_cast<double>(taken);
        replicates[r] = finish(stat, sums, std::vector<double>(max_lag, sums.count));
    });

    curve.std_error.assign(max_lag, 0.0);
    if (options.resamples >= 2) {
        for (std::size_t j = 0; j < max_lag; ++j) {
            double mean = 0.0;
            for (const auto& rep : replicates) mean += rep[j];
            mean /= static_cast<double>(replicates.size());
            double ss = 0.0;
            for (const auto& rep : replicates) ss += (rep[j] - mean) * (rep[j] - mean);
            curve.std_error[j] = std::sqrt(ss / static_cast<double>(replicates.size() - 1));
        }
    }
    return curve;
}

} // namespace

CorrelationCurve estimate_leverage(const ReturnSeries& series, std::size_t max_lag, const BootstrapOptions& options) {
    return estimate_lagged(Statistic::Leverage, series, max_lag, options);
}

CorrelationCurve estimate_autocorr(const ReturnSeries& series, std::size_t max_lag, const BootstrapOptions& options) {
    return estimate_lagged(Statistic::Autocorr, series, max_lag, options);
}

double FrequencyGrid::x_step() const { return std::numbers::pi / half_width; }

std::vector<std::complex<double>> empirical_cf(std::span<const double> samples, const FrequencyGrid& grid) {
    if (samples.empty()) throw Error(ErrorCode::InsufficientData, "empirical_cf needs samples");
    if (grid.size < 2 || grid.size % 2 != 0 || !(grid.half_width > 0.0)) {
        throw Error(ErrorCode::InvalidParams, "frequency grid must have an even size and positive extent");
    }
    const std::size_t half = grid.size / 2;
    const double step = grid.step();
    // phi at omega = j * step for j = 0..half, by a per-sample rotation
    // recurrence over cache-sized blocks of samples.
    std::vector<double> re(half + 1, 0.0);
    std::vector<double> im(half + 1, 0.0);
    constexpr std::size_t kBlock = 512;
    std::vector<double> c(kBlock);
    std::vector<double> s(kBlock);
    std::vector<double> rc(kBlock);
    std::vector<double> rs(kBlock);
    for (std::size_t begin = 0; begin < samples.size(); begin += kBlock) {
        const std::size_t len = std::min(kBlock, samples.size() - begin);
        for (std::size_t i = 0; i < len; ++i) {
            c[i] = 1.0;
            s[i] = 0.0;
            rc[i] = std::cos(step * samples[begin + i]);
            rs[i] = std::sin(step * samples[begin + i]);
        }
        for (std::size_t j = 0; j <= half; ++j) {
            double sum_c = 0.0;
            double sum_s = 0.0;
            for (std::size_t i = 0; i < len; ++i) {
                sum_c += c[i];
                sum_s += s[i];
                const double nc = c[i] * rc[i] - s[i] * rs[i];
                const double ns = c[i] * rs[i] + s[i] * rc[i];
                c[i] = nc;
                s[i] = ns;
            }
            re[j] += sum_c;
            im[j] += sum_s;
        }
    }
    const double inv_n = 1.0 / static_cast<double>(samples.size());
    std::vector<std::complex<double>> phi(grid.size);
    for (std::size_t j = 0; j <= half; ++j) {
        const std::complex<double> value(re[j] * inv_n, im[j] * inv_n);
        if (j < half) phi[half + j] = value;
        if (j > 0) phi[half - j] = std::conj(value);
    }
    phi[half] = {1.0, 0.0};
    return phi;
}

double EmpiricalDensity::trapezoid_mass() const {
    double mass = 0.0;
    for (std::size_t i = 1; i < grid.size(); ++i) {
        mass += 0.5 * (density[i] + density[i - 1]) * (grid[i] - grid[i - 1]);
    }
    return mass;
}

EmpiricalDensity invert_cf(std::span<const std::complex<double>> phi, const FrequencyGrid& grid,
                           const InversionOptions& options) {
    const std::size_t n = grid.size;
    if (phi.size() != n) throw Error(ErrorCode::InvalidParams, "phi length must equal the grid size");
    if (!is_power_of_two(n) || n < 256) {
        throw Error(ErrorCode::InvalidParams, "inversion grid must have 2^p points with p >= 8");
    }
    EmpiricalDensity out;
    const double edge = std::max(std::abs(phi.front()), std::abs(phi.back()));
    if (options.check_edges) {
        if (edge > 1e-3) {
            std::ostringstream os;
            os << "|phi| = " << edge << " at the frequency grid edge exceeds 1e-3";
            throw Error(ErrorCode::GridTooCoarse, os.str());
        }
        if (edge > 1e-6) {
            std::ostringstream os;
            os << "|phi| = " << edge << " at the frequency grid edge exceeds 1e-6; tails may be truncated";
            out.warnings.push_back(os.str());
        }
    }

    const double dw = grid.step();
    const double dx = grid.x_step();
    std::vector<std::complex<double>> work(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double omega = grid.omega(k);
        const std::complex<double> shift = std::polar(1.0, -omega * options.x_center);
        work[k] = phi[k] * shift * (k % 2 ? -1.0 : 1.0);
    }
    fft_inplace(work, -1);

    out.grid.resize(n);
    out.density.resize(n);
    const double scale = dw / (2.0 * std::numbers::pi);
    for (std::size_t j = 0; j < n; ++j) {
        out.grid[j] = options.x_center + (static_cast<double>(j) - static_cast<double>(n / 2)) * dx;
        double p = scale * work[j].real() * (j % 2 ? -1.0 : 1.0);
        if (p < 0.0) {
            out.clipped_mass += -p * dx;
            p = 0.0;
        }
        out.density[j] = p;
    }
    out.bandwidth_or_binwidth = dx;
    return out;
}

EmpiricalDensity histogram_density(std::span<const double> samples, const DensityOptions& options) {
    if (samples.size() < 2) throw Error(ErrorCode::InsufficientData, "histogram needs >= 2 samples");
    const auto [lo_it, hi_it] = std::minmax_element(samples.begin(), samples.end());
    const double lo = *lo_it;
    const double hi = *hi_it;
    double width = options.binwidth;
    if (width <= 0.0) {
        const double iqr = quantile(samples, 0.75) - quantile(samples, 0.25);
        width = 2.0 * iqr * std::pow(static_cast<double>(samples.size()), -1.0 / 3.0);
    }
    if (!(width > 0.0)) width = hi > lo ? (hi - lo) / 10.0 : 1.0;
    auto bins = static_cast<std::size_t>(std::floor((hi - lo) / width)) + 1;
    if (bins > options.max_bins) {
        width = (hi - lo) / static_cast<double>(options.max_bins - 1);
        bins = options.max_bins;
    }
    std::vector<double> counts(bins + 2, 0.0);
    for (double v : samples) {
        auto b = static_cast<std::size_t>(std::floor((v - lo) / width));
        b = std::min(b, bins - 1);
        counts[b + 1] += 1.0;
    }
    EmpiricalDensity out;
    out.n_samples = samples.size();
    out.effective_sample_size = static_cast<double>(samples.size());
    out.bandwidth_or_binwidth = width;
    out.grid.resize(bins + 2);
    out.density.resize(bins + 2);
    const double norm = 1.0 / (static_cast<double>(samples.size()) * width);
    for (std::size_t b = 0; b < bins + 2; ++b) {
        out.grid[b] = lo + (static_cast<double>(b) - 0.5) * width;
        out.density[b] = counts[b] * norm;
    }
    return out;
}

EmpiricalDensity cf_density(std::span<const double> samples, const DensityOptions& options) {
    if (samples.size() < 2) throw Error(ErrorCode::InsufficientData, "cf density needs >= 2 samples");
    const double sd = std::sqrt(sample_variance(samples));
    if (!(sd > 0.0)) throw Error(ErrorCode::InsufficientData, "cf density needs non-degenerate samples");
    double h = options.bandwidth;
    if (h <= 0.0) {
        const double iqr = quantile(samples, 0.75) - quantile(samples, 0.25);
        const double spread = iqr > 0.0 ? std::min(sd, iqr / 1.34) : sd;
        h = 0.9 * spread * std::pow(static_cast<double>(samples.size()), -0.2);
    }
    const auto [lo_it, hi_it] = std::minmax_element(samples.begin(), samples.end());
    const double center = 0.5 * (*lo_it + *hi_it);
    const double reach = 0.5 * (*hi_it - *lo_it) + 6.0 * h;

    FrequencyGrid grid;
    grid.half_width = std::max(8.0 / sd, 5.5 / h);
    grid.size = std::max<std::size_t>(256, options.fft_size);
    while (!is_power_of_two(grid.size)) ++grid.size;
    // x range is size * pi / half_width; it must hold both tails plus margin.
    while (static_cast<double>(grid.size) * grid.x_step() < 2.2 * reach && grid.size < (std::size_t{1} << 22)) {
        grid.size *= 2;
    }

    std::vector<double> centered(samples.begin(), samples.end());
    for (double& v : centered) v -= center;
    auto phi = empirical_cf(centered, grid);
    for (std::size_t k = 0; k < grid.size; ++k) {
        const double w = grid.omega(k);
        phi[k] *= std::exp(-0.5 * h * h * w * w);
    }
    // phi belongs to the centered samples; invert about 0 and move the grid back.
    auto out = invert_cf(phi, grid, InversionOptions{0.0, true});
    for (double& x : out.grid) x += center;
    out.n_samples = samples.size();
    out.effective_sample_size = static_cast<double>(samples.size());
    out.bandwidth_or_binwidth = h;
    return out;
}

EmpiricalDensity density_from_samples(std::span<const double> samples, const DensityOptions& options) {
    return options.method == DensityMethod::Histogram ? histogram_density(samples, options)
                                                      : cf_density(samples, options);
}

std::vector<double> terminal_returns(const ModelParams& params, double horizon, std::size_t n_paths,
                                     const ReturnPdfOptions& options) {
    if (!(horizon > 0.0)) throw Error(ErrorCode::InvalidParams, "horizon must be > 0");
    const double max_dt = options.max_dt > 0.0 ? options.max_dt : std::min(1.0, 0.05 / params.alpha);
    PathConfig config;
    config.n_steps = static_cast<std::size_t>(std::ceil(horizon / max_dt - 1e-9));
    config.dt = horizon / static_cast<double>(config.n_steps);
    config.n_paths = n_paths;
    config.seed = options.seed;
    config.record_stride = config.n_steps;
    const auto paths = simulate_paths(params, config, SimulationOptions{options.workers, true});
    std::vector<double> out(n_paths);
    for (std::size_t p = 0; p < n_paths; ++p) out[p] = paths.x(p, 1);
    return out;
}

EmpiricalDensity return_pdf_mc(const ModelParams& params, double horizon, std::size_t n_paths,
                               const ReturnPdfOptions& options) {
    const auto samples = terminal_returns(params, horizon, n_paths, options);
    auto density = density_from_samples(samples, options.density);
    if (n_paths < 10000) {
        density.warnings.push_back("low statistics: " + std::to_string(n_paths) + " paths (< 1e4)");
    }
    return density;
}

} // namespace svlab
