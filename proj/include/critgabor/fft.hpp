#pragma once

#include <vector>

#include "critgabor/phaseplane.hpp"

namespace critgabor {

// Unnormalised DFT in place: X_k = sum_n x_n exp(sign * 2 pi i k n / N), sign = -1 or +1.
void fft_inplace(std::vector<cplx>& data, int sign);

// Signed frequency index of DFT bin k for length n (the Nyquist bin of even n maps to -n/2).
inline long fft_frequency(std::size_t k, std::size_t n) {
  const long kk = static_cast<long>(k), nn = static_cast<long>(n);
  return 2 * kk < nn ? kk : kk - nn;
}

}  // namespace critgabor
