#pragma once

#include "svlab/model.hpp"

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace svlab {

enum class SeriesOrigin { Simulated, Empirical };

// Ordered per-step return increments.
struct ReturnSeries {
    std::vector<double> dx;
    double dt = 1.0;
    SeriesOrigin origin = SeriesOrigin::Simulated;
};

// Throws InvalidSeries when an entry is not finite or fewer than 2 entries.
void validate(const ReturnSeries& series);
ReturnSeries reversed(const ReturnSeries& series);

struct CorrelationCurve {
    std::vector<double> lags;   // j * dt, j = 1..max_lag
    std::vector<double> values;
    std::vector<double> std_error;
    std::vector<std::string> warnings;
};

// Moving-block bootstrap. block_length 0 falls back to 10 * max_lag.
struct BootstrapOptions {
    std::size_t block_length = 0;
    std::size_t resamples = 200;
    std::uint64_t seed = 0;
    unsigned workers = 0;
};

// 10 relaxation times in steps of dt, the block length used for a series
// simulated from `params`.
std::size_t block_length_for(const ModelParams& params, double dt);

// Discrete leverage coefficient
//   L(j) = mean_t[dx(t+j)^2 dx(t)] / mean_t[dx(t)^2]^2,  j = 1..max_lag.
// The dt factors of numerator and denominator cancel, so the value is the
// continuous coefficient per unit time; divide by leverage_scale(params) to
// compare with leverage_analytic.
CorrelationCurve estimate_leverage(const ReturnSeries& series, std::size_t max_lag,
                                   const BootstrapOptions& options = {});

// Squared-increment autocorrelation
//   C(j) = (mean[dx^2(t) dx^2(t+j)] - mean[dx^2]^2) / (mean[dx^4] - mean[dx^2]^2).
// Lag 0 is not part of the output grid.
CorrelationCurve estimate_autocorr(const ReturnSeries& series, std::size_t max_lag,
                                   const BootstrapOptions& options = {});

// Uniform frequency grid omega_n = -half_width + n * step, n = 0..size-1, with
// step = 2 half_width / size; omega = 0 sits at n = size / 2.
struct FrequencyGrid {
    double half_width = 32.0;
    std::size_t size = 4096;

    double step() const { return 2.0 * half_width / static_cast<double>(size); }
    double omega(std::size_t n) const {
        return (static_cast<double>(n) - static_cast<double>(size / 2)) * step();
    }
    // Spacing of the conjugate x grid: 2 pi / (size * step) = pi / half_width.
    double x_step() const;
};

// phi(omega) = (1/N) sum_n exp(i omega x_n), exactly 1 at omega = 0.
std::vector<std::complex<double>> empirical_cf(std::span<const double> samples, const FrequencyGrid& grid);

struct EmpiricalDensity {
    std::vector<double> grid;
    std::vector<double> density;
    std::size_t n_samples = 0;
    double bandwidth_or_binwidth = 0.0;
    double clipped_mass = 0.0;            // mass removed by clipping negative values
    double effective_sample_size = 0.0;   // differs from n_samples for overlapping windows
    std::vector<std::string> warnings;

    double trapezoid_mass() const;
};

struct InversionOptions {
    double x_center = 0.0;   // density grid is centered here
    bool check_edges = true; // grid-too-coarse when edge |phi| > 1e-3
};

// Discrete Fourier inversion of phi on `grid` to the conjugate x grid
//   x_j = x_center + (j - size/2) * pi / half_width,
// with the continuous-transform phase and scale factors. Negative values are
// clipped to 0 and their mass reported. Edge |phi| above 1e-6 warns, above
// 1e-3 throws GridTooCoarse. `size` must be a power of two >= 256.
EmpiricalDensity invert_cf(std::span<const std::complex<double>> phi, const FrequencyGrid& grid,
                           const InversionOptions& options = {});

enum class DensityMethod { Histogram, CharacteristicFunction };

struct DensityOptions {
    DensityMethod method = DensityMethod::Histogram;
    double binwidth = 0.0;          // histogram: 0 selects Freedman-Diaconis
    std::size_t max_bins = 20000;
    double bandwidth = 0.0;         // cf route: Gaussian kernel width, 0 selects Silverman
    std::size_t fft_size = 4096;    // cf route: minimum grid size
};

// Histogram estimate with one empty bin padded on each side, so the
// trapezoidal integral equals the histogram mass.
EmpiricalDensity histogram_density(std::span<const double> samples, const DensityOptions& options = {});

// Characteristic-function route: empirical_cf damped by the Gaussian kernel's
// transform exp(-h^2 omega^2 / 2) and inverted with invert_cf. This is the
// Gaussian kernel density estimate evaluated on the FFT grid. The frequency
// extent covers max(8 / std, 5.5 / h) and the grid grows (powers of two) until
// the x range spans the sample range.
EmpiricalDensity cf_density(std::span<const double> samples, const DensityOptions& options = {});

EmpiricalDensity density_from_samples(std::span<const double> samples, const DensityOptions& options = {});

struct ReturnPdfOptions {
    double max_dt = 0.0;  // 0 selects min(1, 0.05 / alpha) time units
    std::uint64_t seed = 0;
    unsigned workers = 0;
    DensityOptions density;
};

// X(horizon) over n_paths paths whose Y(0) is drawn from the stationary law.
std::vector<double> terminal_returns(const ModelParams& params, double horizon, std::size_t n_paths,
                                     const ReturnPdfOptions& options = {});

// Density of X(horizon); warns below 1e4 paths.
EmpiricalDensity return_pdf_mc(const ModelParams& params, double horizon, std::size_t n_paths,
                               const ReturnPdfOptions& options = {});

} // namespace svlab
