#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

// Elementwise kernels for the spectral pipeline.
//
// Every kernel has a scalar reference implementation and, where the build and
// the CPU allow it, an AVX2 variant. Both variants perform the same IEEE
// operations in the same order (no FMA contraction), so their results are
// bit-identical; the equivalence tests rely on this.

namespace nlp::simd {

using cplx = std::complex<double>;

struct KernelSet {
    std::string_view name;

    // x[i] *= s[i]
    void (*scale_by_real)(std::span<cplx> x, std::span<const double> s);
    // out[i] = a[i] * b[i]
    void (*multiply)(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> out);
    // out[i] += coef * (a[i] * b[i])
    void (*accumulate_product)(std::span<cplx> out, std::span<const cplx> a,
                               std::span<const cplx> b, double coef);
    // out[i] += c[i] * (a[i] * b[i])
    void (*accumulate_product_field)(std::span<cplx> out, std::span<const cplx> a,
                                     std::span<const cplx> b, std::span<const double> c);
    // out[i] = a[i] + alpha * b[i]
    void (*combine)(std::span<cplx> out, std::span<const cplx> a, double alpha,
                    std::span<const cplx> b);
    // out[i] = s[i] * (a[i] + alpha * b[i])
    void (*propagate_combine)(std::span<cplx> out, std::span<const double> s,
                              std::span<const cplx> a, double alpha, std::span<const cplx> b);
    // max_i |x[i]|, modulus computed as hi * sqrt(1 + (lo/hi)^2)
    double (*max_abs)(std::span<const cplx> x);
    // max_i w[i] * |x[i]|
    double (*weighted_max_abs)(std::span<const cplx> x, std::span<const double> w);
    // true when every real and imaginary part is finite
    bool (*all_finite)(std::span<const cplx> x);
};

const KernelSet& scalar_kernels();

// nullptr when the binary was built without AVX2 support or the CPU lacks it.
const KernelSet* avx2_kernels();

// The table used by the library. Chosen once: AVX2 when available, unless the
// environment variable NLP_SIMD is set to "scalar".
const KernelSet& active();

// Modulus with the same rounding as the kernels' max_abs.
double modulus(cplx z);

}  // namespace nlp::simd
