#pragma once

#include <complex>
#include <vector>

namespace martlab::fft {

// In-place iterative radix-2 FFT; n must be a power of two.
void transform(std::vector<std::complex<double>>& a, bool inverse);

bool is_pow2(std::size_t n);

}  // namespace martlab::fft
