#pragma once

#include "svlab/error.hpp"
#include "svlab/model.hpp"

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace svlab {

inline constexpr double kTradingDaysPerYear = 252.0;

struct PathConfig {
    double dt = 1.0;              // step, in units of time_unit
    std::size_t n_steps = 1;
    std::size_t n_paths = 1;
    std::uint64_t seed = 0;
    std::size_t record_stride = 1; // keep every record_stride-th step (step 0 always kept)
    std::string time_unit = "day";

    std::size_t n_recorded() const { return n_steps / record_stride + 1; }
};

// Throws InvalidParams on hard violations; warns when alpha * dt > 0.1.
std::vector<std::string> validate(const PathConfig& config, const ModelParams& params);

// Row-major dense matrix of doubles.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    std::span<const double> data() const { return data_; }
    std::span<double> data() { return data_; }

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

// Monte Carlo ensemble: x, y and cumulative integrated variance, one row per
// path, one column per recorded step.
struct PathSet {
    PathConfig config;
    ModelParams params;
    Matrix x;
    Matrix y;
    Matrix integrated_var;

    std::size_t n_paths() const { return x.rows(); }
    std::size_t n_recorded() const { return x.cols(); }
    std::size_t step_of(std::size_t column) const { return column * config.record_stride; }
    double time_of(std::size_t column) const { return static_cast<double>(step_of(column)) * config.dt; }
};

struct WienerPair {
    double dw1 = 0.0;
    double dw2 = 0.0;
};

// dw1 = sqrt(dt) z1, dw2 = rho dw1 + sqrt(1 - rho^2) sqrt(dt) z2 with z1, z2
// independent standard normals drawn from `noise`.
template <class Noise>
WienerPair correlated_increments(double rho, double dt, Noise& noise) {
    const double scale = std::sqrt(dt);
    const double z1 = scale * noise.normal();
    const double z2 = scale * noise.normal();
    return {z1, rho * z1 + std::sqrt(1.0 - rho * rho) * z2};
}

struct SvState {
    double x = 0.0;
    double y = 0.0;
};

// One Euler-Maruyama step of the coupled (X, Y) system.
SvState euler_step(const SdeCoefficients& coeffs, SvState state, double dt, WienerPair w);

// Integrates a single trajectory from `start`, calling
// record(step, state, integrated_var) at step 0 and every `stride` steps.
template <class Noise, class Record>
void integrate_path(const SdeCoefficients& coeffs, double rho, SvState start, double dt,
                    std::size_t n_steps, std::size_t stride, Noise& noise, Record&& record) {
    SvState state = start;
    double integrated_var = 0.0;
    record(std::size_t{0}, state, integrated_var);
    for (std::size_t step = 1; step <= n_steps; ++step) {
        const double sigma = coeffs.vol_map(state.y);
        const WienerPair w = correlated_increments(rho, dt, noise);
        try {
            state = euler_step(coeffs, state, dt, w);
        } catch (const Error& e) {
            throw Error(ErrorCode::NonFiniteState,
                        "step " + std::to_string(step) + ": " + e.detail());
        }
        integrated_var += sigma * sigma * dt;
        if (step % stride == 0) record(step, state, integrated_var);
    }
}

struct SimulationOptions {
    unsigned workers = 0;          // 0: default_worker_count()
    bool stationary_start = false; // draw Y(0) per path from the stationary law
};

PathSet simulate_paths(const ModelParams& params, const PathConfig& config,
                       const SimulationOptions& options = {});

// One path covering `years` trading years of 252 days; dt is in days.
PathSet single_long_series(const ModelParams& params, std::size_t years, double dt_days,
                           std::uint64_t seed, std::size_t record_stride = 1);

// Per-recorded-interval increments of X along one path.
std::vector<double> increments(const PathSet& paths, std::size_t path);

} // namespace svlab
