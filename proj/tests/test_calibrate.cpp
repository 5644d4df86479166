#include "svlab/calibrate.hpp"
#include "svlab/error.hpp"
#include "svlab/random.hpp"
#include "svlab/stats.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace svlab;
using std::chrono::days;
using std::chrono::sys_days;

namespace {

PriceSeries series(const std::vector<double>& closes) {
    PriceSeries p;
    sys_days d{std::chrono::year{2001} / 1 / 1};
    for (double c : closes) {
        p.dates.push_back(d);
        p.closes.push_back(c);
        d += days(1);
    }
    return p;
}

// 10^4 trading days simulated on a yearly time axis with 10 substeps per day.
PriceSeries synthetic(ModelParams p, std::uint64_t seed) {
    PathConfig c;
    c.dt = 1.0 / (10.0 * kTradingDaysPerYear);
    c.n_steps = 100000;
    c.record_stride = 10;
    c.seed = seed;
    c.time_unit = "year";
    const auto paths = simulate_paths(p, c);
    return prices_from_path(paths, 0, sys_days{std::chrono::year{2000} / 1 / 3});
}

PriceSeries expou_prices(std::uint64_t seed) {
    ModelParams p;
    p.kind = ModelKind::ExpOU;
    p.alpha = 25.0;         // per year, about 0.1 per trading day
    p.k = std::sqrt(50.0);  // beta = 1
    p.rho = -0.5;
    p.mu = 0.5 * std::exp(2.0); // compensates the mean variance drag
    return synthetic(p, seed);
}

PriceSeries heston_prices(std::uint64_t seed) {
    ModelParams p;
    p.kind = ModelKind::Heston;
    p.alpha = 5.0;
    p.m = 0.04;
    p.k = 0.6;
    p.rho = -0.5;
    p.y0 = 0.04;
    return synthetic(p, seed);
}

PriceSeries gaussian_prices(std::uint64_t seed) {
    ModelParams p;
    p.kind = ModelKind::Vasicek;
    p.alpha = 0.1;
    p.m = 0.01;
    p.k = 1e-12;
    p.y0 = 0.01;
    PathConfig c;
    c.n_steps = 10000;
    c.seed = seed;
    return prices_from_path(simulate_paths(p, c), 0, sys_days{std::chrono::year{2000} / 1 / 3});
}

std::vector<double> draws(const DensityFamily& f, std::size_t n, std::uint64_t seed) {
    RandomStream rng(seed, 0);
    std::vector<double> out(n);
    for (auto& v : out) v = sample(f, rng);
    return out;
}

FamilyKind top(const FitReport& r) { return kind_of(r.ranked.front().family); }

} // namespace

TEST_CASE("volatility proxy: hand arithmetic") {
    const auto proxy = volatility_proxy(series({100, 110, 99}));
    REQUIRE(proxy.size() == 2);
    CHECK(proxy[0] == doctest::Approx(0.100335).epsilon(1e-5));
    CHECK(proxy[1] == doctest::Approx(0.100335).epsilon(1e-5));
    const auto r = log_returns(series({100, 110, 99}));
    CHECK(r[0] == doctest::Approx(0.09531).epsilon(1e-4));
    CHECK(r[1] == doctest::Approx(-0.10536).epsilon(1e-4));
}

TEST_CASE("volatility proxy: constant prices and short series") {
    for (double v : volatility_proxy(series(std::vector<double>(40, 12.5)))) CHECK(v == 0.0);
    const auto two = volatility_proxy(series({10, 11}));
    CHECK(two.size() == 1);
    CHECK_THROWS_AS(fit_mle(FamilyKind::Normal, two), Error);
    CHECK_THROWS_AS(validate(series({10, 11})), Error);
}

TEST_CASE("volatility proxy: non-negative and scale invariant") {
    const auto p = gaussian_prices(3);
    auto scaled = p;
    for (auto& c : scaled.closes) c *= 37.0;
    const auto a = volatility_proxy(p);
    const auto b = volatility_proxy(scaled);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i] >= 0.0);
        CHECK(b[i] == doctest::Approx(a[i]).epsilon(1e-9).scale(1e-12));
    }
}

TEST_CASE("price series validation") {
    auto p = series({1, 2, 3});
    p.closes[1] = -1.0;
    CHECK_THROWS_AS(validate(p, 2), Error);
    p = series({1, 2, 3});
    std::swap(p.dates[0], p.dates[1]);
    CHECK_THROWS_AS(validate(p, 2), Error);
}

TEST_CASE("fit_mle: Normal closed form") {
    const std::vector<double> s = {1, 2, 3};
    const auto r = fit_mle(FamilyKind::Normal, s);
    const auto& n = std::get<NormalDensity>(r.family);
    CHECK(n.mean == 2.0);
    CHECK(n.std == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-14));
    CHECK(std::isfinite(r.loglik));
    CHECK(!r.warnings.empty());
}

TEST_CASE("fit_mle: Normal log-likelihood equals the direct sum at the MLE") {
    const auto s = draws(NormalDensity{0.5, 1.5}, 5000, 2);
    const auto r = fit_mle(FamilyKind::Normal, s);
    CHECK(std::abs(r.loglik - log_likelihood(r.family, s)) < 1e-9 * std::abs(r.loglik));
    CHECK(r.aic == doctest::Approx(4.0 - 2.0 * r.loglik));
}

TEST_CASE("fit_mle: Gamma shape recovery") {
    const auto s = draws(GammaDensity{1.111, 0.036}, 100000, 3);
    const auto g = std::get<GammaDensity>(fit_mle(FamilyKind::Gamma, s).family);
    CHECK(std::abs(g.shape / 1.111 - 1.0) < 0.05);
}

TEST_CASE("fit_mle: support violations") {
    CHECK_THROWS_AS(fit_mle(FamilyKind::LogNormal, std::vector<double>{0.1, 0.0, 0.3, 0.5}), Error);
    try {
        fit_mle(FamilyKind::LogNormal, std::vector<double>{0.1, 0.0, 0.3, 0.5});
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DomainError);
    }
    CHECK_THROWS_AS(fit_mle(FamilyKind::Gamma, std::vector<double>{0.1, -0.2, 0.3, 0.5}), Error);
}

TEST_CASE("fit_mle: parameter recovery for every family") {
    const std::vector<DensityFamily> truth = {NormalDensity{0.3, 2.0}, GammaDensity{1.111, 0.036},
                                              LogNormalDensity{-3.3, 1.35}, StudentTDensity{0.01, 0.04, 3.5}};
    for (const auto& f : truth) {
        const auto s = draws(f, 100000, 4);
        const auto fit = fit_mle(kind_of(f), s).family;
        CAPTURE(to_string(kind_of(f)));
        std::visit(
            [&](const auto& t) {
                using T = std::decay_t<decltype(t)>;
                const auto& e = std::get<T>(fit);
                const auto near = [](double a, double b, double tol) { return std::abs(a / b - 1.0) < tol; };
                if constexpr (std::is_same_v<T, NormalDensity>) {
                    CHECK(near(e.mean, t.mean, 0.05));
                    CHECK(near(e.std, t.std, 0.05));
                } else if constexpr (std::is_same_v<T, GammaDensity>) {
                    CHECK(near(e.shape, t.shape, 0.05));
                    CHECK(near(e.scale, t.scale, 0.05));
                } else if constexpr (std::is_same_v<T, LogNormalDensity>) {
                    CHECK(near(e.log_mean, t.log_mean, 0.05));
                    CHECK(near(e.log_std, t.log_std, 0.05));
                } else {
                    CHECK(near(e.location, t.location, 0.05));
                    CHECK(near(e.scale, t.scale, 0.05));
                    CHECK(near(e.dof, t.dof, 0.15));
                }
            },
            f);
    }
}

TEST_CASE("fit_mle: the optimum is no worse than the moment start") {
    const std::vector<DensityFamily> truth = {GammaDensity{0.7, 2.0}, LogNormalDensity{0.5, 0.4},
                                              StudentTDensity{-1.0, 0.3, 2.5}};
    for (const auto& f : truth) {
        const auto s = draws(f, 3000, 5);
        const auto r = fit_mle(kind_of(f), s);
        CHECK(r.loglik >= log_likelihood(moment_start(kind_of(f), s), s));
        CHECK(r.converged);
    }
}

TEST_CASE("fit_mle: Student-t on Gaussian data approaches the Normal fit") {
    const auto s = draws(NormalDensity{0.0, 1.0}, 100000, 6);
    const auto t = fit_mle(FamilyKind::StudentT, s);
    const auto n = fit_mle(FamilyKind::Normal, s);
    CHECK(std::get<StudentTDensity>(t.family).dof > 20.0);
    CHECK(std::abs(t.loglik - n.loglik) < 1.0);
}

TEST_CASE("fit_volatility_all: ExpOU surrogate ranks Log-normal first") {
    const auto report = fit_volatility_all(expou_prices(7));
    REQUIRE(report.failures.empty());
    CHECK(top(report) == FamilyKind::LogNormal);
    for (std::size_t i = 1; i < report.ranked.size(); ++i) CHECK(report.ranked[i - 1].loglik >= report.ranked[i].loglik);
}

TEST_CASE("fit_volatility_all: constant volatility completes") {
    const auto report = fit_volatility_all(gaussian_prices(8));
    CHECK(report.ranked.size() + report.failures.size() == 3);
    CHECK(!report.ranked.empty());
}

TEST_CASE("fit_volatility_all: Heston surrogate favors Gamma over Normal") {
    const auto report = fit_volatility_all(heston_prices(9));
    double gamma = -INFINITY, normal = -INFINITY;
    for (const auto& r : report.ranked) {
        if (kind_of(r.family) == FamilyKind::Gamma) gamma = r.loglik;
        if (kind_of(r.family) == FamilyKind::Normal) normal = r.loglik;
    }
    CHECK(gamma >= normal);
}

TEST_CASE("fit_returns: heavy tails of the ExpOU surrogate") {
    const FamilyKind fams[] = {FamilyKind::Normal, FamilyKind::StudentT};
    const auto report = fit_returns(expou_prices(10), fams);
    CHECK(top(report) == FamilyKind::StudentT);
}

TEST_CASE("horizon returns: base case and Brownian scaling") {
    const auto p = gaussian_prices(11);
    const auto h1 = horizon_returns(p, 1);
    auto r = log_returns(p);
    const double m = sample_mean(r);
    REQUIRE(h1.returns.size() == r.size());
    for (std::size_t i = 0; i < r.size(); ++i) CHECK(h1.returns[i] == doctest::Approx(r[i] - m).scale(1e-15));
    CHECK(!h1.overlapping);

    const std::size_t hs[] = {1, 5, 20};
    const auto d = multi_horizon_densities(p, hs);
    const auto d1 = multi_horizon_densities(p, std::span<const std::size_t>(hs, 1));
    CHECK(d[0].density == d1[0].density);
    const double daily = sample_variance(h1.returns);
    for (std::size_t h : {5u, 20u}) {
        CHECK(std::abs(sample_variance(horizon_returns(p, h).returns) / (h * daily) - 1.0) < 0.10);
    }
}

TEST_CASE("horizon returns: overlapping windows for long horizons") {
    const auto p = gaussian_prices(12);
    const auto h = horizon_returns(p, 250);
    CHECK(h.overlapping);
    CHECK(h.effective_sample_size == doctest::Approx(10000.0 / 250.0));
    const std::size_t hs[] = {250};
    CHECK(!multi_horizon_densities(p, hs).front().warnings.empty());
}

TEST_CASE("horizon densities: ExpOU kurtosis falls with the horizon") {
    const auto p = expou_prices(13);
    double previous = INFINITY;
    for (std::size_t h : {1u, 5u, 20u}) {
        const double k = sample_moments(horizon_returns(p, h).returns).excess_kurtosis;
        CHECK(k < previous);
        previous = k;
    }
}

TEST_CASE("prices_from_path skips weekends and starts at s0") {
    const auto p = gaussian_prices(14);
    CHECK(p.closes.front() == 100.0);
    for (auto d : p.dates) {
        const std::chrono::weekday w{d};
        CHECK(w != std::chrono::Saturday);
        CHECK(w != std::chrono::Sunday);
    }
}
