#include "svlab/analytic.hpp"

#include "svlab/error.hpp"

#include <cmath>

namespace svlab {

DensityFamily stationary_driver_pdf(const ModelParams& params) {
    validate(params);
    const double beta = params.beta();
    switch (params.kind) {
    case ModelKind::Vasicek: return NormalDensity{params.m, std::sqrt(beta)};
    case ModelKind::Heston: return GammaDensity{2.0 * params.alpha * params.m / (params.k * params.k), beta};
    case ModelKind::ExpOU: return NormalDensity{0.0, std::sqrt(beta)};
    }
    throw Error(ErrorCode::UnsupportedModel, "unknown model kind");
}

DensityFamily stationary_volatility_pdf(const ModelParams& params) {
    if (params.kind == ModelKind::ExpOU) {
        validate(params);
        return LogNormalDensity{0.0, std::sqrt(params.beta())};
    }
    return stationary_driver_pdf(params);
}

double leverage_analytic(const ModelParams& params, double tau) {
    validate(params);
    if (params.kind == ModelKind::Heston) {
        throw Error(ErrorCode::UnsupportedModel, "no closed-form leverage for the Heston model");
    }
    if (tau < 0.0) return 0.0;
    const double rate = params.kind == ModelKind::Vasicek ? params.alpha : params.k * params.k;
    return params.rho * std::exp(-rate * tau);
}

double leverage_scale(const ModelParams& params) {
    validate(params);
    switch (params.kind) {
    case ModelKind::Vasicek: return 2.0 * params.k / (params.m * params.m + params.beta());
    case ModelKind::ExpOU: return 2.0 * params.k * std::exp(0.5 * params.beta());
    case ModelKind::Heston: break;
    }
    throw Error(ErrorCode::UnsupportedModel, "no closed-form leverage for the Heston model");
}

double autocorr_analytic(const ModelParams& params, double tau) {
    validate(params);
    if (!(tau >= 0.0)) throw Error(ErrorCode::InvalidParams, "autocorrelation lag must be >= 0");
    const double decay = std::exp(-params.alpha * tau);
    if (params.kind != ModelKind::ExpOU) return decay;
    const double beta = params.beta();
    return std::expm1(4.0 * beta * decay) / (3.0 * std::exp(4.0 * beta) - 1.0);
}

TransientMoments transient_moments(const ModelParams& params, double t) {
    validate(params);
    if (!(t >= 0.0)) throw Error(ErrorCode::InvalidParams, "t must be >= 0");
    const double level = params.reversion_level();
    TransientMoments out;
    out.mean = level + (params.y0 - level) * std::exp(-params.alpha * t);
    if (params.kind != ModelKind::Heston) {
        out.variance = -params.beta() * std::expm1(-2.0 * params.alpha * t);
    }
    return out;
}

double transient_variance(const ModelParams& params, double t) {
    const auto moments = transient_moments(params, t);
    if (!moments.variance) {
        throw Error(ErrorCode::UnsupportedMoment, "Heston variance of Y(t) is simulation-only");
    }
    return *moments.variance;
}

} // namespace svlab
