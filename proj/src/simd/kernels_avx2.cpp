// AVX2 variants of the elementwise kernels. Compiled with -mavx2 only; the
// dispatcher never hands these out unless the CPU reports AVX2.

#include "kernels_internal.hpp"

#if defined(NLP_HAVE_AVX2_BUILD) && defined(__AVX2__)

#include <immintrin.h>

#include <algorithm>
#include <cmath>

namespace nlp::simd::avx2 {
namespace {

// [s0, s0, s1, s1] from two consecutive reals.
inline __m256d broadcast_pair(const double* s) {
    const __m128d p = _mm_loadu_pd(s);
    return _mm256_permute4x64_pd(_mm256_castpd128_pd256(p), 0x50);
}

inline __m256d cmul(__m256d a, __m256d b) {
    const __m256d a_re = _mm256_movedup_pd(a);
    const __m256d a_im = _mm256_permute_pd(a, 0xF);
    const __m256d b_sw = _mm256_permute_pd(b, 0x5);
    return _mm256_addsub_pd(_mm256_mul_pd(a_re, b), _mm256_mul_pd(a_im, b_sw));
}

// Per-pair modulus, duplicated into both lanes of the pair.
inline __m256d cabs(__m256d x) {
    const __m256d sign = _mm256_set1_pd(-0.0);
    const __m256d ax = _mm256_andnot_pd(sign, x);
    const __m256d sw = _mm256_permute_pd(ax, 0x5);
    const __m256d hi = _mm256_max_pd(ax, sw);
    const __m256d lo = _mm256_min_pd(ax, sw);
    const __m256d q = _mm256_div_pd(lo, hi);
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d mod = _mm256_mul_pd(hi, _mm256_sqrt_pd(_mm256_add_pd(one, _mm256_mul_pd(q, q))));
    const __m256d zero = _mm256_setzero_pd();
    const __m256d is_zero = _mm256_cmp_pd(hi, zero, _CMP_EQ_OQ);
    return _mm256_blendv_pd(mod, zero, is_zero);
}

inline double hmax(__m256d v) {
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, v);
    return std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
}

void scale_by_real(std::span<cplx> x, std::span<const double> s) {
    double* p = reinterpret_cast<double*>(x.data());
    const std::size_t n = x.size();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d v = _mm256_loadu_pd(p + 2 * i);
        _mm256_storeu_pd(p + 2 * i, _mm256_mul_pd(v, broadcast_pair(s.data() + i)));
    }
    for (; i < n; ++i) {
        p[2 * i] *= s[i];
        p[2 * i + 1] *= s[i];
    }
}

void multiply(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> out) {
    const double* pa = reinterpret_cast<const double*>(a.data());
    const double* pb = reinterpret_cast<const double*>(b.data());
    double* po = reinterpret_cast<double*>(out.data());
    const std::size_t n = a.size();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d va = _mm256_loadu_pd(pa + 2 * i);
        const __m256d vb = _mm256_loadu_pd(pb + 2 * i);
        _mm256_storeu_pd(po + 2 * i, cmul(va, vb));
    }
    for (; i < n; ++i) {
        const double ar = pa[2 * i], ai = pa[2 * i + 1];
        const double br = pb[2 * i], bi = pb[2 * i + 1];
        po[2 * i] = ar * br - ai * bi;
        po[2 * i + 1] = ar * bi + ai * br;
    }
}

void accumulate_product(std::span<cplx> out, std::span<const cplx> a, std::span<const cplx> b,
                        double coef) {
    const double* pa = reinterpret_cast<const double*>(a.data());
    const double* pb = reinterpret_cast<const double*>(b.data());
    double* po = reinterpret_cast<double*>(out.data());
    const std::size_t n = a.size();
    const __m256d c = _mm256_set1_pd(coef);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d prod = cmul(_mm256_loadu_pd(pa + 2 * i), _mm256_loadu_pd(pb + 2 * i));
        const __m256d acc = _mm256_loadu_pd(po + 2 * i);
        _mm256_storeu_pd(po + 2 * i, _mm256_add_pd(acc, _mm256_mul_pd(c, prod)));
    }
    for (; i < n; ++i) {
        const double ar = pa[2 * i], ai = pa[2 * i + 1];
        const double br = pb[2 * i], bi = pb[2 * i + 1];
        po[2 * i] += coef * (ar * br - ai * bi);
        po[2 * i + 1] += coef * (ar * bi + ai * br);
    }
}

void accumulate_product_field(std::span<cplx> out, std::span<const cplx> a,
                              std::span<const cplx> b, std::span<const double> cf) {
    const double* pa = reinterpret_cast<const double*>(a.data());
    const double* pb = reinterpret_cast<const double*>(b.data());
    double* po = reinterpret_cast<double*>(out.data());
    const std::size_t n = a.size();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d prod = cmul(_mm256_loadu_pd(pa + 2 * i), _mm256_loadu_pd(pb + 2 * i));
        const __m256d acc = _mm256_loadu_pd(po + 2 * i);
        _mm256_storeu_pd(po + 2 * i,
                         _mm256_add_pd(acc, _mm256_mul_pd(broadcast_pair(cf.data() + i), prod)));
    }
    for (; i < n; ++i) {
        const double ar = pa[2 * i], ai = pa[2 * i + 1];
        const double br = pb[2 * i], bi = pb[2 * i + 1];
        po[2 * i] += cf[i] * (ar * br - ai * bi);
        po[2 * i + 1] += cf[i] * (ar * bi + ai * br);
    }
}

void combine(std::span<cplx> out, std::span<const cplx> a, double alpha, std::span<const cplx> b) {
    const double* pa = reinterpret_cast<const double*>(a.data());
    const double* pb = reinterpret_cast<const double*>(b.data());
    double* po = reinterpret_cast<double*>(out.data());
    const std::size_t n = 2 * a.size();
    const __m256d al = _mm256_set1_pd(alpha);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d r = _mm256_add_pd(_mm256_loadu_pd(pa + i),
                                        _mm256_mul_pd(al, _mm256_loadu_pd(pb + i)));
        _mm256_storeu_pd(po + i, r);
    }
    for (; i < n; ++i) po[i] = pa[i] + alpha * pb[i];
}

void propagate_combine(std::span<cplx> out, std::span<const double> s, std::span<const cplx> a,
                       double alpha, std::span<const cplx> b) {
    const double* pa = reinterpret_cast<const double*>(a.data());
    const double* pb = reinterpret_cast<const double*>(b.data());
    double* po = reinterpret_cast<double*>(out.data());
    const std::size_t n = a.size();
    const __m256d al = _mm256_set1_pd(alpha);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d inner = _mm256_add_pd(_mm256_loadu_pd(pa + 2 * i),
                                            _mm256_mul_pd(al, _mm256_loadu_pd(pb + 2 * i)));
        _mm256_storeu_pd(po + 2 * i, _mm256_mul_pd(broadcast_pair(s.data() + i), inner));
    }
    for (; i < n; ++i) {
        po[2 * i] = s[i] * (pa[2 * i] + alpha * pb[2 * i]);
        po[2 * i + 1] = s[i] * (pa[2 * i + 1] + alpha * pb[2 * i + 1]);
    }
}

double max_abs(std::span<const cplx> x) {
    const double* p = reinterpret_cast<const double*>(x.data());
    const std::size_t n = x.size();
    __m256d m = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) m = _mm256_max_pd(m, cabs(_mm256_loadu_pd(p + 2 * i)));
    double r = hmax(m);
    for (; i < n; ++i) r = std::max(r, modulus(x[i]));
    return r;
}

double weighted_max_abs(std::span<const cplx> x, std::span<const double> w) {
    const double* p = reinterpret_cast<const double*>(x.data());
    const std::size_t n = x.size();
    __m256d m = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d v = _mm256_mul_pd(broadcast_pair(w.data() + i), cabs(_mm256_loadu_pd(p + 2 * i)));
        m = _mm256_max_pd(m, v);
    }
    double r = hmax(m);
    for (; i < n; ++i) r = std::max(r, w[i] * modulus(x[i]));
    return r;
}

bool all_finite(std::span<const cplx> x) {
    const double* p = reinterpret_cast<const double*>(x.data());
    const std::size_t n = 2 * x.size();
    const __m256d zero = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d v = _mm256_loadu_pd(p + i);
        // x - x is 0 for finite x and NaN for inf/NaN.
        const __m256d ok = _mm256_cmp_pd(_mm256_sub_pd(v, v), zero, _CMP_EQ_OQ);
        if (_mm256_movemask_pd(ok) != 0xF) return false;
    }
    for (; i < n; ++i)
        if (!std::isfinite(p[i])) return false;
    return true;
}

}  // namespace
}  // namespace nlp::simd::avx2

namespace nlp::simd::detail {

const KernelSet* avx2_table() {
    static const KernelSet set{"avx2",
                               &avx2::scale_by_real,
                               &avx2::multiply,
                               &avx2::accumulate_product,
                               &avx2::accumulate_product_field,
                               &avx2::combine,
                               &avx2::propagate_combine,
                               &avx2::max_abs,
                               &avx2::weighted_max_abs,
                               &avx2::all_finite};
    return &set;
}

}  // namespace nlp::simd::detail

#else

namespace nlp::simd::detail {
const KernelSet* avx2_table() { return nullptr; }
}  // namespace nlp::simd::detail

#endif
