#pragma once

#include "svlab/random.hpp"

#include <string_view>
#include <variant>

namespace svlab {

struct NormalDensity {
    double mean = 0.0;
    double std = 1.0;
};

// shape k, scale theta: pdf x^(k-1) e^(-x/theta) / (Gamma(k) theta^k)
struct GammaDensity {
    double shape = 1.0;
    double scale = 1.0;
};

// law of exp(N(log_mean, log_std^2))
struct LogNormalDensity {
    double log_mean = 0.0;
    double log_std = 1.0;
};

// location-scale Student-t with `dof` degrees of freedom
struct StudentTDensity {
    double location = 0.0;
    double scale = 1.0;
    double dof = 5.0;
};

using DensityFamily = std::variant<NormalDensity, GammaDensity, LogNormalDensity, StudentTDensity>;

enum class FamilyKind { Normal, Gamma, LogNormal, StudentT };

FamilyKind kind_of(const DensityFamily& family);
std::string_view to_string(FamilyKind kind);
FamilyKind parse_family_kind(std::string_view name);

// Throws Error(InvalidParams) when a scale/shape parameter is not positive.
void validate(const DensityFamily& family);

double pdf(const DensityFamily& family, double x);
double log_pdf(const DensityFamily& family, double x);
double cdf(const DensityFamily& family, double x);
double mean(const DensityFamily& family);
// Infinite for Student-t with dof <= 2.
double variance(const DensityFamily& family);
int parameter_count(FamilyKind kind);
double sample(const DensityFamily& family, RandomStream& rng);

// Lower end of the support: 0 for Gamma and Log-normal, -inf otherwise.
double support_min(const DensityFamily& family);

} // namespace svlab
