#include "svlab/error.hpp"
#include "svlab/optimize.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace svlab;

TEST_CASE("one-dimensional quadratic") {
    const auto r = nelder_mead([](const std::vector<double>& p) { return (p[0] - 3.0) * (p[0] - 3.0); }, {0.0});
    CHECK(r.converged);
    CHECK(std::abs(r.argmin[0] - 3.0) < 1e-6);
}

TEST_CASE("Rosenbrock from (-1.2, 1)") {
    const auto rosen = [](const std::vector<double>& p) {
        return 100.0 * std::pow(p[1] - p[0] * p[0], 2) + std::pow(1.0 - p[0], 2);
    };
    NelderMeadOptions opts;
    opts.tolerance = 1e-12;
    const auto r = nelder_mead(rosen, {-1.2, 1.0}, opts);
    CHECK(std::abs(r.argmin[0] - 1.0) < 1e-4);
    CHECK(std::abs(r.argmin[1] - 1.0) < 1e-4);
}

TEST_CASE("non-finite objective at the start is an error") {
    const auto bad = [](const std::vector<double>&) { return std::numeric_limits<double>::quiet_NaN(); };
    CHECK_THROWS_AS(nelder_mead(bad, {1.0, 2.0}), Error);
}

TEST_CASE("non-finite values away from the start act as walls") {
    const auto walled = [](const std::vector<double>& p) {
        return p[0] < 0.5 ? std::numeric_limits<double>::infinity() : (p[0] - 0.2) * (p[0] - 0.2);
    };
    const auto r = nelder_mead(walled, {2.0});
    CHECK(r.argmin[0] >= 0.5);
    CHECK(r.argmin[0] == doctest::Approx(0.5).epsilon(1e-3));
}

TEST_CASE("the result never exceeds the starting value and is deterministic") {
    const auto f = [](const std::vector<double>& p) {
        return std::sin(3.0 * p[0]) + std::cos(2.0 * p[1]) + 0.1 * (p[0] * p[0] + p[1] * p[1]);
    };
    const std::vector<double> start = {0.7, -0.4};
    const auto a = nelder_mead(f, start);
    const auto b = nelder_mead(f, start);
    CHECK(a.value <= f(start));
    CHECK(a.argmin == b.argmin);
    CHECK(a.n_evals == b.n_evals);
}

TEST_CASE("evaluation budget is respected") {
    NelderMeadOptions opts;
    opts.max_evals = 50;
    const auto r = nelder_mead(
        [](const std::vector<double>& p) {
            double s = 0.0;
            for (double v : p) s += v * v * v * v;
            return s;
        },
        {1, 2, 3, 4, 5}, opts);
    CHECK(!r.converged);
    CHECK(r.n_evals <= 50 + 5);
}
