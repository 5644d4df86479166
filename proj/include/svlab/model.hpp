#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace svlab {

enum class ModelKind { Vasicek, Heston, ExpOU };

std::string_view to_string(ModelKind kind);
ModelKind parse_model_kind(std::string_view name);

// One model's coefficient set. Rates are per unit of the time axis the caller
// simulates on (per trading day by default); k carries units per sqrt(time).
struct ModelParams {
    ModelKind kind = ModelKind::Vasicek;
    double alpha = 1.0; // mean-reversion rate
    double m = 0.0;     // reversion level of Y (forced to 0 for ExpOU)
    double k = 0.1;     // vol-of-vol
    double rho = 0.0;   // correlation between the two Wiener drivers
    double mu = 0.0;    // price drift
    double y0 = 0.0;    // Y(0)
    double s0 = 100.0;  // S(0)

    // Level the drift of Y vanishes at.
    double reversion_level() const { return kind == ModelKind::ExpOU ? 0.0 : m; }
    // k^2 / (2 alpha): stationary variance of the OU-type driving process.
    double beta() const { return k * k / (2.0 * alpha); }
    bool feller_satisfied() const { return 2.0 * alpha * m >= k * k; }
};

// Throws Error(InvalidParams) naming the violated constraint; returns non-fatal
// warnings (Feller violation, |rho| == 1, ExpOU with m != 0 being reset).
std::vector<std::string> validate(const ModelParams& params);

// Returns a validated copy with the ExpOU reversion level forced to zero.
ModelParams normalized(ModelParams params);

// Drift, diffusion and volatility map of the driving process Y. A plain value
// type: evaluation is a switch over the model kind, no type erasure.
class SdeCoefficients {
public:
    explicit SdeCoefficients(const ModelParams& params);

    double drift_y(double y) const;
    double diff_y(double y) const;
    double vol_map(double y) const;

    ModelKind kind() const { return kind_; }

private:
    ModelKind kind_;
    double alpha_;
    double level_;
    double k_;
};

SdeCoefficients coefficients(const ModelParams& params);

// Inverts the zero-mean log-return definition:
// S = s0 * exp(mu t - integrated_var / 2 + x).
double log_return_to_price(double x, double t, const ModelParams& params, double integrated_var);

// Forward map: X = ln(S / s0) - mu t + integrated_var / 2.
double price_to_log_return(double price, double t, const ModelParams& params, double integrated_var);

} // namespace svlab
