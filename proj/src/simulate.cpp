#include "svlab/simulate.hpp"

#include "svlab/analytic.hpp"
#include "svlab/parallel.hpp"
#include "svlab/random.hpp"

#include <cmath>
#include <sstream>

namespace svlab {

std::vector<std::string> validate(const PathConfig& config, const ModelParams& params) {
    if (!(config.dt > 0.0) || !std::isfinite(config.dt)) {
        throw Error(ErrorCode::InvalidParams, "dt must be > 0");
    }
    if (config.n_steps < 1) throw Error(ErrorCode::InvalidParams, "n_steps must be >= 1");
    if (config.n_paths < 1) throw Error(ErrorCode::InvalidParams, "n_paths must be >= 1");
    if (config.record_stride < 1) throw Error(ErrorCode::InvalidParams, "record_stride must be >= 1");
    std::vector<std::string> warnings;
    if (params.alpha * config.dt > 0.1) {
        std::ostringstream os;
        os << "alpha * dt = " << params.alpha * config.dt
           << " > 0.1: time step is not small against the mean-reversion time";
        warnings.push_back(os.str());
    }
    return warnings;
}

SvState euler_step(const SdeCoefficients& coeffs, SvState state, double dt, WienerPair w) {
    SvState next;
    next.x = state.x + coeffs.vol_map(state.y) * w.dw1;
    next.y = state.y + coeffs.drift_y(state.y) * dt + coeffs.diff_y(state.y) * w.dw2;
    if (!std::isfinite(next.x) || !std::isfinite(next.y)) {
        std::ostringstream os;
        os << "state (" << next.x << ", " << next.y << ") after step from y = " << state.y;
        throw Error(ErrorCode::NonFiniteState, os.str());
    }
    return next;
}

PathSet simulate_paths(const ModelParams& raw_params, const PathConfig& config,
                       const SimulationOptions& options) {
    const ModelParams params = normalized(raw_params);
    validate(config, params);
    const SdeCoefficients coeffs(params);
    const auto driver = stationary_driver_pdf(params);

    PathSet out;
    out.config = config;
    out.params = params;
    const std::size_t cols = config.n_recorded();
    out.x = Matrix(config.n_paths, cols);
    out.y = Matrix(config.n_paths, cols);
    out.integrated_var = Matrix(config.n_paths, cols);

    parallel_for(config.n_paths, options.workers, [&](std::size_t path) {
        RandomStream rng(config.seed, path);
        SvState start{0.0, params.y0};
        if (options.stationary_start) start.y = sample(driver, rng);
        auto xs = out.x.row(path);
        auto ys = out.y.row(path);
        auto iv = out.integrated_var.row(path);
        try {
            integrate_path(coeffs, params.rho, start, config.dt, config.n_steps, config.record_stride, rng,
                           [&](std::size_t step, const SvState& s, double integrated) {
                               const std::size_t c = step / config.record_stride;
                               xs[c] = s.x;
                               ys[c] = s.y;
                               iv[c] = integrated;
                           });
        } catch (const Error& e) {
            throw Error(ErrorCode::NonFiniteState, "path " + std::to_string(path) + ", " + e.detail());
        }
    });
    return out;
}

PathSet single_long_series(const ModelParams& params, std::size_t years, double dt_days, std::uint64_t seed,
                           std::size_t record_stride) {
    if (years < 1) throw Error(ErrorCode::InvalidParams, "years must be >= 1");
    if (!(dt_days > 0.0)) throw Error(ErrorCode::InvalidParams, "dt must be > 0");
    const double steps = static_cast<double>(years) * kTradingDaysPerYear / dt_days;
    const double rounded = std::round(steps);
    if (std::abs(steps - rounded) > 1e-9 * steps) {
        throw Error(ErrorCode::InvalidParams, "dt must divide the 252-day trading year into whole steps");
    }
    PathConfig config;
    config.dt = dt_days;
    config.n_steps = static_cast<std::size_t>(rounded);
    config.n_paths = 1;
    config.seed = seed;
    config.record_stride = record_stride;
    return simulate_paths(params, config, SimulationOptions{1, false});
}

std::vector<double> increments(const PathSet& paths, std::size_t path) {
    const auto xs = paths.x.row(path);
    std::vector<double> dx;
    if (xs.size() < 2) return dx;
    dx.reserve(xs.size() - 1);
    for (std::size_t i = 1; i < xs.size(); ++i) dx.push_back(xs[i] - xs[i - 1]);
    return dx;
}

} // namespace svlab
