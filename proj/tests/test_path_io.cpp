#include "svlab/error.hpp"
#include "svlab/path_io.hpp"

#include <doctest.h>

#include <sstream>

using namespace svlab;

namespace {

PathSet sample_set() {
    ModelParams p;
    p.kind = ModelKind::Heston;
    p.alpha = 2.0;
    p.m = 0.04;
    p.k = 0.3;
    p.rho = -0.6;
    p.y0 = 0.04;
    p.mu = 0.0002;
    PathConfig c;
    c.dt = 0.1;
    c.n_steps = 50;
    c.n_paths = 3;
    c.record_stride = 5;
    c.seed = 77;
    return simulate_paths(p, c);
}

} // namespace

TEST_CASE("path CSV has the documented header and row count") {
    const auto set = sample_set();
    std::stringstream ss;
    write_paths_csv(ss, set);
    std::string header;
    std::getline(ss, header);
    CHECK(header == "path_id,step,t,x,y,sigma");
    std::size_t rows = 0;
    for (std::string line; std::getline(ss, line);) ++rows;
    CHECK(rows == 3 * 11);
}

TEST_CASE("path CSV round-trips losslessly") {
    const auto set = sample_set();
    std::stringstream ss;
    write_paths_csv(ss, set);
    const auto back = read_paths_csv(ss);
    const auto ref = to_table(set);
    CHECK(back.path_id == ref.path_id);
    CHECK(back.step == ref.step);
    CHECK(back.t == ref.t);
    CHECK(back.x == ref.x);
    CHECK(back.y == ref.y);
    CHECK(back.sigma == ref.sigma);
}

TEST_CASE("path binary round-trips losslessly") {
    const auto set = sample_set();
    std::stringstream ss(std::ios::in | std::ios::out | std::ios::binary);
    write_paths_binary(ss, set);
    const auto bytes = ss.str();
    CHECK(bytes.substr(0, 8) == "SVLABPTH");
    const auto back = read_paths_binary(ss);
    CHECK(back.x == set.x);
    CHECK(back.y == set.y);
    CHECK(back.integrated_var == set.integrated_var);
    CHECK(back.params.kind == set.params.kind);
    CHECK(back.params.rho == set.params.rho);
    CHECK(back.config.seed == set.config.seed);
    CHECK(back.config.record_stride == set.config.record_stride);
    CHECK(back.config.time_unit == set.config.time_unit);
}

TEST_CASE("path binary rejects a foreign header") {
    std::stringstream ss("NOTAPATHFILE0000");
    CHECK_THROWS_AS(read_paths_binary(ss), Error);
}
