#include "svlab/error.hpp"
#include "svlab/random.hpp"
#include "svlab/simulate.hpp"
#include "svlab/stats.hpp"

#include <doctest.h>

#include <cmath>

using namespace svlab;

namespace {

ModelParams make(ModelKind kind, double alpha, double m, double k, double rho = 0.0, double y0 = 0.0) {
    ModelParams p;
    p.kind = kind;
    p.alpha = alpha;
    p.m = m;
    p.k = k;
    p.rho = rho;
    p.y0 = y0;
    return p;
}

double sample_corr(const std::vector<double>& a, const std::vector<double>& b) {
    const double ma = sample_mean(a), mb = sample_mean(b);
    double sab = 0, saa = 0, sbb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sab += (a[i] - ma) * (b[i] - mb);
        saa += (a[i] - ma) * (a[i] - ma);
        sbb += (b[i] - mb) * (b[i] - mb);
    }
    return sab / std::sqrt(saa * sbb);
}

struct Draws {
    std::vector<double> dw1, dw2;
};

Draws draw_pairs(double rho, double dt, std::size_t n, std::uint64_t seed) {
    RandomStream rng(seed, 0);
    Draws d;
    for (std::size_t i = 0; i < n; ++i) {
        const auto w = correlated_increments(rho, dt, rng);
        d.dw1.push_back(w.dw1);
        d.dw2.push_back(w.dw2);
    }
    return d;
}

} // namespace

TEST_CASE("correlated_increments: rho = 1 copies the first increment") {
    RandomStream rng(5, 0);
    for (int i = 0; i < 1000; ++i) {
        const auto w = correlated_increments(1.0, 0.3, rng);
        REQUIRE(w.dw2 == w.dw1);
    }
}

TEST_CASE("correlated_increments: sample correlation") {
    const std::size_t n = 1000000;
    CHECK(std::abs(sample_corr(draw_pairs(0.0, 1.0, n, 1).dw1, draw_pairs(0.0, 1.0, n, 1).dw2)) < 3e-3);
    const auto d = draw_pairs(-0.5, 1.0, n, 2);
    CHECK(std::abs(sample_corr(d.dw1, d.dw2) + 0.5) < 3e-3);
}

TEST_CASE("correlated_increments: marginal mean and variance") {
    const double dt = 0.01;
    const std::size_t n = 1000000;
    const auto d = draw_pairs(-0.3, dt, n, 3);
    for (const auto* v : {&d.dw1, &d.dw2}) {
        CHECK(std::abs(sample_mean(*v)) < 4.0 * std::sqrt(dt / n));
        CHECK(std::abs(sample_variance(*v) / dt - 1.0) < 0.01);
    }
}

TEST_CASE("euler_step: deterministic examples") {
    const auto vas = coefficients(make(ModelKind::Vasicek, 1.0, 0.2, 0.1));
    auto s = euler_step(vas, {0.5, 0.1}, 0.01, {0.0, 0.0});
    CHECK(s.y == doctest::Approx(0.101).epsilon(1e-13));
    CHECK(s.x == 0.5);

    const auto hes = coefficients(make(ModelKind::Heston, 5.0, 0.04, 0.6));
    s = euler_step(hes, {0.2, -0.01}, 0.01, {0.3, 0.4});
    CHECK(s.y == doctest::Approx(-0.0075).epsilon(1e-13));
    CHECK(s.x == 0.2);

    const auto eou = coefficients(normalized(make(ModelKind::ExpOU, 1.0, 0.0, 0.3)));
    s = euler_step(eou, {0.1, 0.0}, 0.37, {0.05, 0.0});
    CHECK(s.x == doctest::Approx(0.15).epsilon(1e-14));
    CHECK(s.y == 0.0);
}

TEST_CASE("euler_step: non-finite state is an error") {
    const auto eou = coefficients(normalized(make(ModelKind::ExpOU, 1.0, 0.0, 0.3)));
    CHECK_THROWS_AS(euler_step(eou, {0.0, 800.0}, 1.0, {1.0, 0.0}), Error);
}

TEST_CASE("simulate_paths: initial condition only") {
    PathConfig c;
    c.n_steps = 1;
    c.record_stride = 2;
    const auto p = simulate_paths(make(ModelKind::Vasicek, 1.0, 0.2, 0.1, 0.0, 0.15), c);
    REQUIRE(p.n_recorded() == 1);
    CHECK(p.x(0, 0) == 0.0);
    CHECK(p.y(0, 0) == 0.15);
}

TEST_CASE("simulate_paths: invariants of the recorded ensemble") {
    PathConfig c;
    c.dt = 0.05;
    c.n_steps = 400;
    c.n_paths = 50;
    c.record_stride = 4;
    c.seed = 9;
    const auto p = simulate_paths(make(ModelKind::Heston, 2.0, 0.04, 0.5, -0.7, 0.03), c);
    CHECK(p.n_recorded() == 101);
    for (std::size_t i = 0; i < p.n_paths(); ++i) {
        CHECK(p.x(i, 0) == 0.0);
        CHECK(p.y(i, 0) == 0.03);
        for (std::size_t j = 1; j < p.n_recorded(); ++j) REQUIRE(p.integrated_var(i, j) >= p.integrated_var(i, j - 1));
    }
}

TEST_CASE("simulate_paths: identical across worker counts") {
    PathConfig c;
    c.dt = 0.1;
    c.n_steps = 500;
    c.n_paths = 37;
    c.seed = 123;
    for (auto kind : {ModelKind::Vasicek, ModelKind::Heston, ModelKind::ExpOU}) {
        auto params = make(kind, 0.5, kind == ModelKind::ExpOU ? 0.0 : 0.04, 0.2, -0.4, 0.04);
        const auto one = simulate_paths(params, c, {1, false});
        const auto four = simulate_paths(params, c, {4, false});
        const auto again = simulate_paths(params, c, {3, false});
        CHECK(one.x == four.x);
        CHECK(one.y == four.y);
        CHECK(one.integrated_var == four.integrated_var);
        CHECK(one.x == again.x);
    }
}

TEST_CASE("simulate_paths: constant volatility limit") {
    const double m = 0.01, t = 20.0;
    PathConfig c;
    c.dt = 1.0;
    c.n_steps = static_cast<std::size_t>(t);
    c.n_paths = 10000;
    c.record_stride = c.n_steps;
    c.seed = 4;
    const auto p = simulate_paths(make(ModelKind::Vasicek, 0.1, m, 1e-12, -0.5, m), c);
    std::vector<double> xt(c.n_paths);
    for (std::size_t i = 0; i < c.n_paths; ++i) {
        xt[i] = p.x(i, 1);
        REQUIRE(std::abs(p.y(i, 1) - m) < 1e-9);
    }
    CHECK(std::abs(sample_variance(xt) / (m * m * t) - 1.0) < 0.05);
}

TEST_CASE("simulate_paths: ExpOU long-run variance of Y") {
    PathConfig c;
    c.dt = 1.0;
    c.n_steps = 25000;
    c.seed = 17;
    const auto p = simulate_paths(normalized(make(ModelKind::ExpOU, 0.01, 0.0, 0.1)), c);
    const auto row = p.y.row(0);
    const std::vector<double> y(row.begin() + 500, row.end());
    CHECK(std::abs(sample_variance(y) / 0.5 - 1.0) < 0.10);
}

TEST_CASE("simulate_paths: stationary start draws Y(0) from the stationary law") {
    PathConfig c;
    c.n_paths = 20000;
    c.seed = 8;
    const auto p = simulate_paths(make(ModelKind::Vasicek, 1.0, 0.2, 0.3), c, {0, true});
    std::vector<double> y0(c.n_paths);
    for (std::size_t i = 0; i < c.n_paths; ++i) y0[i] = p.y(i, 0);
    CHECK(std::abs(sample_mean(y0) - 0.2) < 4.0 * std::sqrt(0.045 / c.n_paths));
    CHECK(std::abs(sample_variance(y0) / 0.045 - 1.0) < 0.05);
}

TEST_CASE("zero-noise relaxation: first-order error, X stays at 0") {
    const auto params = make(ModelKind::Vasicek, 1.0, 0.2, 0.1, 0.0, 1.0);
    const auto coeffs = coefficients(params);
    const double horizon = 2.0;
    double previous = 0.0;
    for (double dt : {0.02, 0.01, 0.005, 0.0025}) {
        const auto n = static_cast<std::size_t>(std::llround(horizon / dt));
        ZeroNoise noise;
        double max_err = 0.0;
        integrate_path(coeffs, 0.0, {0.0, params.y0}, dt, n, 1, noise, [&](std::size_t step, SvState s, double) {
            const double exact = params.m + (params.y0 - params.m) * std::exp(-params.alpha * dt * static_cast<double>(step));
            max_err = std::max(max_err, std::abs(s.y - exact));
            REQUIRE(s.x == 0.0);
        });
        CHECK(max_err <= 0.5 * params.alpha * params.alpha * std::abs(params.y0 - params.m) * horizon * dt);
        if (previous > 0.0) CHECK(std::abs(previous / max_err - 2.0) < 0.4);
        previous = max_err;
    }
}

TEST_CASE("Heston truncation: vol map never sees a negative argument") {
    // Strong Feller violation drives Y below zero frequently.
    PathConfig c;
    c.dt = 0.1;
    c.n_steps = 2000;
    c.n_paths = 20;
    c.seed = 2;
    const auto p = simulate_paths(make(ModelKind::Heston, 1.0, 0.01, 0.6, -0.5, 0.01), c);
    bool went_negative = false;
    for (std::size_t i = 0; i < p.n_paths(); ++i) {
        for (std::size_t j = 0; j < p.n_recorded(); ++j) went_negative = went_negative || p.y(i, j) < 0.0;
    }
    CHECK(went_negative);
    const auto coeffs = coefficients(make(ModelKind::Heston, 1.0, 0.01, 0.6));
    for (std::size_t j = 0; j < p.n_recorded(); ++j) CHECK(coeffs.vol_map(p.y(0, j)) >= 0.0);
}

TEST_CASE("single_long_series: lengths") {
    const auto p = make(ModelKind::Vasicek, 0.1, 0.01, 0.001, -0.5, 0.01);
    const auto s100 = single_long_series(p, 100, 1.0, 1);
    CHECK(increments(s100, 0).size() == 25200);
    const auto s1 = single_long_series(p, 1, 0.5, 1);
    CHECK(s1.config.n_steps == 504);
    CHECK_THROWS_AS(single_long_series(p, 0, 1.0, 1), Error);
}

TEST_CASE("validate(PathConfig): soft time-step threshold and hard limits") {
    const auto p = make(ModelKind::Vasicek, 0.5, 0.01, 0.1);
    PathConfig c;
    c.dt = 0.1;
    CHECK(validate(c, p).empty());
    c.dt = 0.5;
    CHECK(validate(c, p).size() == 1);
    c.dt = 0.0;
    CHECK_THROWS_AS(validate(c, p), Error);
    c.dt = 0.1;
    c.n_paths = 0;
    CHECK_THROWS_AS(validate(c, p), Error);
}

TEST_CASE("increments sum to the recorded path") {
    PathConfig c;
    c.n_steps = 100;
    c.seed = 6;
    const auto p = simulate_paths(make(ModelKind::Vasicek, 0.1, 0.02, 0.01, 0.0, 0.02), c);
    const auto dx = increments(p, 0);
    REQUIRE(dx.size() == 100);
    double sum = 0.0;
    for (double v : dx) sum += v;
    CHECK(sum == doctest::Approx(p.x(0, 100)).epsilon(1e-12));
}
