#pragma once

#include <complex>
#include <span>

namespace svlab {

// In-place iterative radix-2 FFT; data.size() must be a power of two.
// sign = -1 computes sum_n a_n e^{-2 pi i n k / N} (forward), +1 the
// unnormalized inverse.
void fft_inplace(std::span<std::complex<double>> data, int sign = -1);

bool is_power_of_two(std::size_t n);

} // namespace svlab
