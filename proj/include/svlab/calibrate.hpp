#pragma once

#include "svlab/densities.hpp"
#include "svlab/estimators.hpp"
#include "svlab/optimize.hpp"
#include "svlab/simulate.hpp"

#include <chrono>
#include <span>
#include <string>
#include <vector>

namespace svlab {

struct PriceSeries {
    std::vector<std::chrono::sys_days> dates;
    std::vector<double> closes;
    std::string symbol;
};

// Dates strictly increasing, closes finite and > 0, dates and closes of equal
// length. Throws InvalidSeries. `min_length` is 30 for fitting.
void validate(const PriceSeries& prices, std::size_t min_length = 30);

// Daily log-returns ln(close_i / close_{i-1}).
std::vector<double> log_returns(const PriceSeries& prices);

// |r_i - mean(r)|: absolute zero-mean daily log-returns, in daily units.
std::vector<double> volatility_proxy(const PriceSeries& prices);

struct FitResult {
    DensityFamily family;
    double loglik = 0.0;
    std::size_t n_samples = 0;
    bool converged = false;
    std::size_t n_evals = 0;
    double aic = 0.0;
    std::vector<std::string> warnings;
};

struct FitOptions {
    NelderMeadOptions optimizer{};
};

double log_likelihood(const DensityFamily& family, std::span<const double> samples);

// Moment-matched starting point of the optimizer.
DensityFamily moment_start(FamilyKind kind, std::span<const double> samples);

// Maximum likelihood fit. Normal is closed form; the other families run
// Nelder-Mead on log-transformed positive parameters (Student-t dof is
// 0.5 + exp(theta)). Fewer than 30 samples warns; fewer than 2 throws
// InsufficientData; samples outside the support throw DomainError.
FitResult fit_mle(FamilyKind kind, std::span<const double> samples, const FitOptions& options = {});

struct FitFailure {
    FamilyKind family;
    std::string message;
};

struct FitReport {
    std::vector<FitResult> ranked; // log-likelihood descending
    std::vector<FitFailure> failures;
};

FitReport fit_ranked(std::span<const FamilyKind> families, std::span<const double> samples,
                     const FitOptions& options = {});

// Normal, Gamma and Log-normal fits of the volatility proxy.
FitReport fit_volatility_all(const PriceSeries& prices, const FitOptions& options = {});

// Fits of zero-mean daily log-returns.
FitReport fit_returns(const PriceSeries& prices, std::span<const FamilyKind> families,
                      const FitOptions& options = {});

struct HorizonReturns {
    std::size_t horizon = 1;
    std::vector<double> returns; // zero-mean
    bool overlapping = false;
    double effective_sample_size = 0.0;
};

// h-day log-returns: non-overlapping windows when at least 100 fit, otherwise
// every overlapping window with effective size (n - 1) / h.
HorizonReturns horizon_returns(const PriceSeries& prices, std::size_t horizon);

std::vector<EmpiricalDensity> multi_horizon_densities(const PriceSeries& prices,
                                                      std::span<const std::size_t> horizons,
                                                      const DensityOptions& options = {});

// Prices along one simulated path, dated on consecutive weekdays from `start`.
// Uses every recorded column; one column is one trading day.
PriceSeries prices_from_path(const PathSet& paths, std::size_t path, std::chrono::sys_days start,
                             std::string symbol = "SYNTH");

} // namespace svlab
