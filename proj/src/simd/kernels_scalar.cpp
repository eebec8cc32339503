#include "nlp/simd/kernels.hpp"

#include <algorithm>
#include <cmath>

#include "kernels_internal.hpp"

namespace nlp::simd {

double modulus(cplx z) {
    const double ar = std::fabs(z.real());
    const double ai = std::fabs(z.imag());
    const double hi = std::max(ar, ai);
    const double lo = std::min(ar, ai);
    if (hi == 0.0) return 0.0;
    const double q = lo / hi;
    return hi * std::sqrt(1.0 + q * q);
}

namespace scalar {

void scale_by_real(std::span<cplx> x, std::span<const double> s) {
    double* p = reinterpret_cast<double*>(x.data());
    for (std::size_t i = 0; i < x.size(); ++i) {
        p[2 * i] *= s[i];
        p[2 * i + 1] *= s[i];
    }
}

void multiply(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> out) {
    const double* pa = reinterpret_cast<const double*>(a.data());
    const double* pb = reinterpret_cast<const double*>(b.data());
    double* po = reinterpret_cast<double*>(out.data());
    for (std::size_t i = 0; i < a.size(); ++i) {
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
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double ar = pa[2 * i], ai = pa[2 * i + 1];
        const double br = pb[2 * i], bi = pb[2 * i + 1];
        po[2 * i] += coef * (ar * br - ai * bi);
        po[2 * i + 1] += coef * (ar * bi + ai * br);
    }
}

void accumulate_product_field(std::span<cplx> out, std::span<const cplx> a,
                              std::span<const cplx> b, std::span<const double> c) {
    const double* pa = reinterpret_cast<const double*>(a.data());
    const double* pb = reinterpret_cast<const double*>(b.data());
    double* po = reinterpret_cast<double*>(out.data());
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double ar = pa[2 * i], ai = pa[2 * i + 1];
        const double br = pb[2 * i], bi = pb[2 * i + 1];
        po[2 * i] += c[i] * (ar * br - ai * bi);
        po[2 * i + 1] += c[i] * (ar * bi + ai * br);
    }
}

void combine(std::span<cplx> out, std::span<const cplx> a, double alpha, std::span<const cplx> b) {
    const double* pa = reinterpret_cast<const double*>(a.data());
    const double* pb = reinterpret_cast<const double*>(b.data());
    double* po = reinterpret_cast<double*>(out.data());
    for (std::size_t i = 0; i < 2 * a.size(); ++i) po[i] = pa[i] + alpha * pb[i];
}

void propagate_combine(std::span<cplx> out, std::span<const double> s, std::span<const cplx> a,
                       double alpha, std::span<const cplx> b) {
    const double* pa = reinterpret_cast<const double*>(a.data());
    const double* pb = reinterpret_cast<const double*>(b.data());
    double* po = reinterpret_cast<double*>(out.data());
    for (std::size_t i = 0; i < a.size(); ++i) {
        po[2 * i] = s[i] * (pa[2 * i] + alpha * pb[2 * i]);
        po[2 * i + 1] = s[i] * (pa[2 * i + 1] + alpha * pb[2 * i + 1]);
    }
}

double max_abs(std::span<const cplx> x) {
    double m = 0.0;
    for (const cplx& z : x) m = std::max(m, modulus(z));
    return m;
}

double weighted_max_abs(std::span<const cplx> x, std::span<const double> w) {
    double m = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, w[i] * modulus(x[i]));
    return m;
}

bool all_finite(std::span<const cplx> x) {
    for (const cplx& z : x)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

}  // namespace scalar

const KernelSet& scalar_kernels() {
    static const KernelSet set{"scalar",
                               &scalar::scale_by_real,
                               &scalar::multiply,
                               &scalar::accumulate_product,
                               &scalar::accumulate_product_field,
                               &scalar::combine,
                               &scalar::propagate_combine,
                               &scalar::max_abs,
                               &scalar::weighted_max_abs,
                               &scalar::all_finite};
    return set;
}

}  // namespace nlp::simd
