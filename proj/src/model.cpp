#include "svlab/model.hpp"

#include "svlab/error.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace svlab {

std::string_view to_string(ModelKind kind) {
    switch (kind) {
    case ModelKind::Vasicek: return "vasicek";
    case ModelKind::Heston: return "heston";
    case ModelKind::ExpOU: return "expou";
    }
    return "unknown";
}

ModelKind parse_model_kind(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "vasicek") return ModelKind::Vasicek;
    if (lower == "heston") return ModelKind::Heston;
    if (lower == "expou" || lower == "exp-ou" || lower == "exp_ou") return ModelKind::ExpOU;
    throw Error(ErrorCode::InvalidParams, "unknown model '" + std::string(name) + "'");
}

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw Error(ErrorCode::InvalidParams, what);
}

} // namespace

std::vector<std::string> validate(const ModelParams& p) {
    require(std::isfinite(p.alpha) && std::isfinite(p.m) && std::isfinite(p.k) &&
                std::isfinite(p.rho) && std::isfinite(p.mu) && std::isfinite(p.y0) &&
                std::isfinite(p.s0),
            "all parameters must be finite");
    require(p.alpha > 0.0, "alpha must be > 0");
    require(p.k > 0.0, "k must be > 0");
    require(p.rho >= -1.0 && p.rho <= 1.0, "rho must lie in [-1, 1]");
    require(p.s0 > 0.0, "s0 must be > 0");

    std::vector<std::string> warnings;
    if (p.kind == ModelKind::Heston) {
        require(p.m > 0.0, "heston requires m > 0");
        require(p.y0 >= 0.0, "heston requires y0 >= 0");
        if (!p.feller_satisfied()) {
            warnings.push_back("Feller violated: 2*alpha*m = " + std::to_string(2.0 * p.alpha * p.m) +
                               " < k^2 = " + std::to_string(p.k * p.k));
        }
    }
    if (p.kind == ModelKind::ExpOU && p.m != 0.0) {
        warnings.push_back("expou reversion level is fixed at 0; m = " + std::to_string(p.m) +
                           " is ignored");
    }
    if (std::abs(p.rho) == 1.0) {
        warnings.push_back("rho at boundary: the two Wiener drivers are perfectly (anti)correlated");
    }
    return warnings;
}

ModelParams normalized(ModelParams params) {
    validate(params);
    if (params.kind == ModelKind::ExpOU) params.m = 0.0;
    return params;
}

SdeCoefficients::SdeCoefficients(const ModelParams& params)
    : kind_(params.kind), alpha_(params.alpha), level_(params.reversion_level()), k_(params.k) {
    validate(params);
}

double SdeCoefficients::drift_y(double y) const {
    // Heston keeps the raw (possibly negative) Y in the linear drift.
    return alpha_ * (level_ - y);
}

double SdeCoefficients::diff_y(double y) const {
    switch (kind_) {
    case ModelKind::Vasicek:
    case ModelKind::ExpOU: return k_;
    case ModelKind::Heston: return k_ * std::sqrt(std::max(y, 0.0));
    }
    return 0.0;
}

double SdeCoefficients::vol_map(double y) const {
    switch (kind_) {
    case ModelKind::Vasicek: return y;
    case ModelKind::Heston: return std::sqrt(std::max(y, 0.0));
    case ModelKind::ExpOU: return std::exp(y);
    }
    return 0.0;
}

SdeCoefficients coefficients(const ModelParams& params) { return SdeCoefficients(params); }

double log_return_to_price(double x, double t, const ModelParams& params, double integrated_var) {
    if (!(integrated_var >= 0.0)) throw Error(ErrorCode::InvalidParams, "integrated_var must be >= 0");
    if (!(t >= 0.0)) throw Error(ErrorCode::InvalidParams, "t must be >= 0");
    return params.s0 * std::exp(params.mu * t - 0.5 * integrated_var + x);
}

double price_to_log_return(double price, double t, const ModelParams& params, double integrated_var) {
    if (!(price > 0.0)) throw Error(ErrorCode::InvalidParams, "price must be > 0");
    return std::log(price / params.s0) - params.mu * t + 0.5 * integrated_var;
}

} // namespace svlab
