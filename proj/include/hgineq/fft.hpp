#pragma once

#include <complex>
#include <vector>

namespace hgineq {

/// In-place unnormalized forward DFT (exponent sign -1). Plans are cached per size.
void fft_forward(std::vector<std::complex<double>>& data);
/// In-place inverse DFT including the 1/N normalization.
void fft_inverse(std::vector<std::complex<double>>& data);

}  // namespace hgineq
