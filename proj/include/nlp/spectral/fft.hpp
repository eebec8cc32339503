#pragma once

#include <complex>
#include <span>
#include <vector>

namespace nlp::spectral {

// Unnormalised in-place complex DFTs over a row-major box with the given
// extents (any sizes, any rank). Plans are created once per (extents,
// direction) and shared; execution is thread-safe.
//   forward:  X[k] = sum_j x[j] e^{-2 pi i j.k / n}
//   backward: x[j] = sum_k X[k] e^{+2 pi i j.k / n}
void dft_forward(const std::vector<int>& extents, std::span<std::complex<double>> data);
void dft_backward(const std::vector<int>& extents, std::span<std::complex<double>> data);

}  // namespace nlp::spectral
