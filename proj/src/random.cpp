#include "svlab/random.hpp"

#include <cmath>

namespace svlab {

namespace {

std::seed_seq make_seed_seq(std::uint64_t seed, std::uint64_t id) {
    const auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v & 0xffffffffu); };
    const auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
    return std::seed_seq{lo(seed), hi(seed), lo(id), hi(id), 0x5356u};
}

} // namespace

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t id) {
    auto seq = make_seed_seq(seed, id);
    engine_.seed(seq);
}

double RandomStream::uniform() {
    for (;;) {
        const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
        if (u > 0.0) return u;
    }
}

double RandomStream::normal() {
    if (spare_) {
        const double z = *spare_;
        spare_.reset();
        return z;
    }
    double u = 0.0;
    double v = 0.0;
    double s = 0.0;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double factor = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * factor;
    return u * factor;
}

double sample_gamma(RandomStream& rng, double shape, double scale) {
    if (shape < 1.0) {
        const double boost = std::pow(rng.uniform(), 1.0 / shape);
        return sample_gamma(rng, shape + 1.0, scale) * boost;
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double z = 0.0;
        double v = 0.0;
        do {
            z = rng.normal();
            v = 1.0 + c * z;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = rng.uniform();
        if (u < 1.0 - 0.0331 * z * z * z * z) return d * v * scale;
        if (std::log(u) < 0.5 * z * z + d * (1.0 - v + std::log(v))) return d * v * scale;
    }
}

} // namespace svlab
