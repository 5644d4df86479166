#pragma once

#include "svlab/densities.hpp"
#include "svlab/model.hpp"

#include <optional>

namespace svlab {

// Stationary law of the driving process:
//   Vasicek: Normal(m, sqrt(k^2 / 2 alpha))      law of sigma = Y
//   Heston:  Gamma(2 alpha m / k^2, k^2 / 2 alpha) law of Y = sigma^2
//   ExpOU:   LogNormal(0, sqrt(k^2 / 2 alpha))    law of sigma = e^Y
DensityFamily stationary_volatility_pdf(const ModelParams& params);

// Stationary law of Y itself (Normal for the OU-type models, Gamma for Heston).
DensityFamily stationary_driver_pdf(const ModelParams& params);

// Leverage curve in its closed form, with H(0) = 1:
//   Vasicek: rho e^(-alpha tau) H(tau),  ExpOU: rho e^(-k^2 tau) H(tau).
// Heston has no closed form and raises UnsupportedModel.
double leverage_analytic(const ModelParams& params, double tau);

// Amplitude relating the discrete leverage estimator (which is dimensionless:
// the dt factors of numerator and denominator cancel) to leverage_analytic at
// tau -> 0+. Derived from Gaussian integration by parts on the stationary law:
//   Vasicek: 2k / E[sigma^2] = 2k / (m^2 + k^2 / 2 alpha)
//   ExpOU:   2k exp(beta / 2)
// Dividing the estimator by this factor yields a curve starting at rho.
double leverage_scale(const ModelParams& params);

// Volatility autocorrelation. ExpOU returns
//   (exp(4 beta e^(-alpha tau)) - 1) / (3 e^(4 beta) - 1)
// verbatim (the squared-increment coefficient, not unit-normalized);
// Vasicek and Heston return the unit-normalized single exponential e^(-alpha tau).
double autocorr_analytic(const ModelParams& params, double tau);

struct TransientMoments {
    double mean = 0.0;
    std::optional<double> variance; // empty for Heston (simulation only)
};

// Mean and variance of Y(t) started from y0.
TransientMoments transient_moments(const ModelParams& params, double t);

// Throws UnsupportedMoment for Heston.
double transient_variance(const ModelParams& params, double t);

} // namespace svlab
