#pragma once

// Thin wrapper over the FFT backend: unnormalized n-dimensional complex
// transforms on N^rank arrays (row-major), rank 1 through 4, with an
// internal plan cache. Normalization and frequency-centering conventions
// live in grid.cpp, not here. Rank 4 serves the bilinear tensor path in
// dimension 2, where the product field lives on a 4-axis grid.

#include <complex>
#include <vector>

namespace riesz {

// sign = -1: sum_k a_k e^{-2 pi i k m / N}; sign = +1: e^{+2 pi i k m / N}.
// Pure function of its input; safe to call from multiple threads.
std::vector<std::complex<double>> fft_nd(const std::vector<std::complex<double>>& data,
                                         int rank, int N, int sign);

}  // namespace riesz
