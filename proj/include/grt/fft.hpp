#pragma once

#include <complex>
#include <vector>

namespace grt {

// In-place complex DFT over a C-order multidimensional array.
// sign = -1 forward (e^{-i...}), +1 backward (unnormalized, as FFTW).
void fft_nd(std::vector<std::complex<double>>& data, const std::vector<int>& dims, int sign);

// 1-D transform of a single row.
void fft_1d(std::vector<std::complex<double>>& row, int sign);

} // namespace grt
