#pragma once

#include "nlp/simd/kernels.hpp"

namespace nlp::simd::detail {

// Defined in kernels_avx2.cpp; nullptr when AVX2 code was not compiled in.
const KernelSet* avx2_table();

}  // namespace nlp::simd::detail
