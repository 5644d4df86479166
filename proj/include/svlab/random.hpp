#pragma once

#include <cstdint>
#include <optional>
#include <random>

namespace svlab {

// Independent, reproducible random stream. Stream `id` under master `seed`
// is seeded through std::seed_seq so that any consumer (path, bootstrap
// resample) owns its own sequence regardless of which thread runs it.
//
// Normal deviates use the Marsaglia polar method on 53-bit uniforms; both the
// engine (mt19937_64) and the transform are fully specified, so streams are
// bit-reproducible.
class RandomStream {
public:
    RandomStream(std::uint64_t seed, std::uint64_t id);

    // Uniform on the open interval (0, 1).
    double uniform();
    double normal();

private:
    std::mt19937_64 engine_;
    std::optional<double> spare_;
};

// Gamma(shape, scale) via Marsaglia-Tsang squeeze; shape < 1 uses the
// U^(1/shape) boost.
double sample_gamma(RandomStream& rng, double shape, double scale);

// Noise source that always returns 0; drives the deterministic limit of the
// Euler scheme.
struct ZeroNoise {
    double normal() { return 0.0; }
};

} // namespace svlab
