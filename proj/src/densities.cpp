#include "svlab/densities.hpp"

#include "svlab/error.hpp"

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace svlab {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kLogSqrt2Pi = 0.5 * std::log(2.0 * std::numbers::pi);

} // namespace

FamilyKind kind_of(const DensityFamily& family) {
    return std::visit(overloaded{
                          [](const NormalDensity&) { return FamilyKind::Normal; },
                          [](const GammaDensity&) { return FamilyKind::Gamma; },
                          [](const LogNormalDensity&) { return FamilyKind::LogNormal; },
                          [](const StudentTDensity&) { return FamilyKind::StudentT; },
                      },
                      family);
}

std::string_view to_string(FamilyKind kind) {
    switch (kind) {
    case FamilyKind::Normal: return "normal";
    case FamilyKind::Gamma: return "gamma";
    case FamilyKind::LogNormal: return "lognormal";
    case FamilyKind::StudentT: return "student_t";
    }
    return "unknown";
}

FamilyKind parse_family_kind(std::string_view name) {
    if (name == "normal") return FamilyKind::Normal;
    if (name == "gamma") return FamilyKind::Gamma;
    if (name == "lognormal" || name == "log-normal") return FamilyKind::LogNormal;
    if (name == "student_t" || name == "studentt" || name == "student-t") return FamilyKind::StudentT;
    throw Error(ErrorCode::InvalidParams, "unknown density family '" + std::string(name) + "'");
}

void validate(const DensityFamily& family) {
    auto positive = [](double v, const char* what) {
        if (!(v > 0.0) || !std::isfinite(v)) throw Error(ErrorCode::InvalidParams, what);
    };
    auto finite = [](double v, const char* what) {
        if (!std::isfinite(v)) throw Error(ErrorCode::InvalidParams, what);
    };
    std::visit(overloaded{
                   [&](const NormalDensity& d) {
                       finite(d.mean, "normal mean must be finite");
                       positive(d.std, "normal std must be > 0");
                   },
                   [&](const GammaDensity& d) {
                       positive(d.shape, "gamma shape must be > 0");
                       positive(d.scale, "gamma scale must be > 0");
                   },
                   [&](const LogNormalDensity& d) {
                       finite(d.log_mean, "log-normal log-mean must be finite");
                       positive(d.log_std, "log-normal log-std must be > 0");
                   },
                   [&](const StudentTDensity& d) {
                       finite(d.location, "student-t location must be finite");
                       positive(d.scale, "student-t scale must be > 0");
                       positive(d.dof, "student-t dof must be > 0");
                   },
               },
               family);
}

double log_pdf(const DensityFamily& family, double x) {
    return std::visit(
        overloaded{
            [x](const NormalDensity& d) {
                const double z = (x - d.mean) / d.std;
                return -0.5 * z * z - std::log(d.std) - kLogSqrt2Pi;
            },
            [x](const GammaDensity& d) {
                if (x < 0.0) return -kInf;
                if (x == 0.0) {
                    if (d.shape < 1.0) return kInf;
                    if (d.shape > 1.0) return -kInf;
                    return -std::log(d.scale);
                }
                return (d.shape - 1.0) * std::log(x) - x / d.scale - std::lgamma(d.shape) -
                       d.shape * std::log(d.scale);
            },
            [x](const LogNormalDensity& d) {
                if (x <= 0.0) return -kInf;
                const double lx = std::log(x);
                const double z = (lx - d.log_mean) / d.log_std;
                return -0.5 * z * z - std::log(d.log_std) - lx - kLogSqrt2Pi;
            },
            [x](const StudentTDensity& d) {
                const double z = (x - d.location) / d.scale;
                const double nu = d.dof;
                return std::lgamma(0.5 * (nu + 1.0)) - std::lgamma(0.5 * nu) -
                       0.5 * std::log(nu * std::numbers::pi) - std::log(d.scale) -
                       0.5 * (nu + 1.0) * std::log1p(z * z / nu);
            },
        },
        family);
}

double pdf(const DensityFamily& family, double x) { return std::exp(log_pdf(family, x)); }

double cdf(const DensityFamily& family, double x) {
    return std::visit(overloaded{
                          [x](const NormalDensity& d) {
                              return 0.5 * std::erfc(-(x - d.mean) / (d.std * std::numbers::sqrt2));
                          },
                          [x](const GammaDensity& d) {
                              if (x <= 0.0) return 0.0;
                              return boost::math::gamma_p(d.shape, x / d.scale);
                          },
                          [x](const LogNormalDensity& d) {
                              if (x <= 0.0) return 0.0;
                              return 0.5 * std::erfc(-(std::log(x) - d.log_mean) /
                                                     (d.log_std * std::numbers::sqrt2));
                          },
                          [x](const StudentTDensity& d) {
                              const double z = (x - d.location) / d.scale;
                              const double nu = d.dof;
                              const double tail =
                                  0.5 * boost::math::ibeta(0.5 * nu, 0.5, nu / (nu + z * z));
                              return z < 0.0 ? tail : 1.0 - tail;
                          },
                      },
                      family);
}

double mean(const DensityFamily& family) {
    return std::visit(overloaded{
                          [](const NormalDensity& d) { return d.mean; },
                          [](const GammaDensity& d) { return d.shape * d.scale; },
                          [](const LogNormalDensity& d) {
                              return std::exp(d.log_mean + 0.5 * d.log_std * d.log_std);
                          },
                          [](const StudentTDensity& d) {
                              return d.dof > 1.0 ? d.location : std::numeric_limits<double>::quiet_NaN();
                          },
                      },
                      family);
}

double variance(const DensityFamily& family) {
    return std::visit(overloaded{
                          [](const NormalDensity& d) { return d.std * d.std; },
                          [](const GammaDensity& d) { return d.shape * d.scale * d.scale; },
                          [](const LogNormalDensity& d) {
                              const double s2 = d.log_std * d.log_std;
                              return std::expm1(s2) * std::exp(2.0 * d.log_mean + s2);
                          },
                          [](const StudentTDensity& d) {
                              return d.dof > 2.0 ? d.scale * d.scale * d.dof / (d.dof - 2.0) : kInf;
                          },
                      },
                      family);
}

int parameter_count(FamilyKind kind) {
    switch (kind) {
    case FamilyKind::Normal:
    case FamilyKind::Gamma:
    case FamilyKind::LogNormal: return 2;
    case FamilyKind::StudentT: return 3;
    }
    return 0;
}

double sample(const DensityFamily& family, RandomStream& rng) {
    return std::visit(overloaded{
                          [&](const NormalDensity& d) { return d.mean + d.std * rng.normal(); },
                          [&](const GammaDensity& d) { return sample_gamma(rng, d.shape, d.scale); },
                          [&](const LogNormalDensity& d) {
                              return std::exp(d.log_mean + d.log_std * rng.normal());
                          },
                          [&](const StudentTDensity& d) {
                              const double z = rng.normal();
                              const double chi2 = sample_gamma(rng, 0.5 * d.dof, 2.0);
                              return d.location + d.scale * z / std::sqrt(chi2 / d.dof);
                          },
                      },
                      family);
}

double support_min(const DensityFamily& family) {
    const auto kind = kind_of(family);
    return (kind == FamilyKind::Gamma || kind == FamilyKind::LogNormal) ? 0.0 : -kInf;
}

} // namespace svlab
