#pragma once

#include <functional>
#include <span>

namespace svlab {

struct Moments {
    double mean = 0.0;
    double variance = 0.0; // unbiased
    double skewness = 0.0;
    double excess_kurtosis = 0.0;
};

// Throws InsufficientData below 4 samples.
Moments sample_moments(std::span<const double> samples);

double sample_mean(std::span<const double> samples);
double sample_variance(std::span<const double> samples);

// Linear-interpolated quantile, q in [0, 1]; copies and partially sorts.
double quantile(std::span<const double> samples, double q);

// Two-sided one-sample Kolmogorov-Smirnov statistic sup |F_n - F|.
double ks_statistic(std::span<const double> samples, const std::function<double(double)>& cdf);

// Asymptotic p-value of a KS statistic for n samples (Kolmogorov law with the
// Stephens small-sample correction).
double ks_pvalue(double statistic, std::size_t n);

// Standard error of the mean of a serially correlated series by the method
// of non-overlapping batch means.
double batch_means_stderr(std::span<const double> series, std::size_t n_batches = 50);

} // namespace svlab
