#include "svlab/fft.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

using namespace svlab;

namespace {

std::vector<std::complex<double>> naive_dft(const std::vector<std::complex<double>>& a, int sign) {
    const std::size_t n = a.size();
    std::vector<std::complex<double>> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t j = 0; j < n; ++j) {
            const double angle = sign * 2.0 * std::numbers::pi * static_cast<double>(j * k % n) / static_cast<double>(n);
            out[k] += a[j] * std::polar(1.0, angle);
        }
    }
    return out;
}

} // namespace

TEST_CASE("fft matches the naive DFT") {
    for (std::size_t n : {1u, 2u, 8u, 64u, 256u}) {
        std::vector<std::complex<double>> a(n);
        for (std::size_t i = 0; i < n; ++i) a[i] = {std::sin(0.3 * i + 1.0), std::cos(1.7 * i * i)};
        for (int sign : {-1, 1}) {
            auto b = a;
            fft_inplace(b, sign);
            const auto ref = naive_dft(a, sign);
            for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(b[i] - ref[i]) < 1e-10 * static_cast<double>(n));
        }
    }
}

TEST_CASE("forward then inverse is N times the identity") {
    std::vector<std::complex<double>> a(1024);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = {static_cast<double>(i % 7), -static_cast<double>(i % 3)};
    auto b = a;
    fft_inplace(b, -1);
    fft_inplace(b, 1);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(b[i] / 1024.0 - a[i]) < 1e-12);
}

TEST_CASE("non power-of-two sizes are rejected") {
    std::vector<std::complex<double>> a(12);
    CHECK_THROWS(fft_inplace(a));
    CHECK(is_power_of_two(4096));
    CHECK(!is_power_of_two(0));
    CHECK(!is_power_of_two(12));
}
