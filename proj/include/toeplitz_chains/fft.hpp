#ifndef TOEPLITZ_CHAINS_FFT_HPP
#define TOEPLITZ_CHAINS_FFT_HPP

#include <vector>

#include "toeplitz_chains/types.hpp"

namespace toeplitz_chains {

/// In-place iterative radix-2 FFT; data.size() must be a power of two.
/// Computes X_k = sum_j x_j exp(-2 pi i j k / M).
void fft_radix2(std::vector<cplx>& data);

}  // namespace toeplitz_chains

#endif
