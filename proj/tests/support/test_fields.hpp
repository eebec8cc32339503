#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "nlp/spectral/field.hpp"

namespace nlp::test {

using spectral::cplx;
using spectral::SpectralField;
using spectral::TorusGrid;

inline std::vector<cplx> random_complex(std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> dist;
    std::vector<cplx> v(count);
    for (auto& z : v) z = {dist(rng), dist(rng)};
    return v;
}

inline std::vector<double> random_real(std::size_t count, std::uint64_t seed, double lo = -1.0, double hi = 1.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(lo, hi);
    std::vector<double> v(count);
    for (auto& x : v) x = dist(rng);
    return v;
}

inline bool in_band(const TorusGrid& g, std::size_t flat, int K) {
    const auto k = g.wavenumbers(flat);
    for (int a = 0; a < g.dim(); ++a)
        if (std::abs(k[a]) > K) return false;
    return true;
}

// Random coefficients on |k_i| <= K, zero elsewhere. Not Hermitian.
inline SpectralField random_band_limited(const TorusGrid& g, int species, int K, std::uint64_t seed) {
    SpectralField f(g, species);
    auto vals = random_complex(f.data().size(), seed);
    for (int j = 0; j < species; ++j)
        for (std::size_t i = 0; i < g.size(); ++i)
            f.at(j, i) = in_band(g, i, K) ? vals[j * g.size() + i] : cplx{};
    return f;
}

// Random Hermitian coefficients on |k_i| <= K (real physical data).
inline SpectralField random_hermitian(const TorusGrid& g, int species, int K, std::uint64_t seed) {
    auto f = random_band_limited(g, species, K, seed);
    SpectralField h(g, species);
    const int n = g.points_per_axis();
    for (int j = 0; j < species; ++j)
        for (std::size_t i = 0; i < g.size(); ++i) {
            auto s = g.unflatten(i);
            for (int a = 0; a < g.dim(); ++a) s[a] = (n - s[a]) % n;
            h.at(j, i) = 0.5 * (f.at(j, i) + std::conj(f.at(j, g.flatten(s))));
        }
    return h;
}

inline double sup(std::span<const cplx> v) {
    double m = 0.0;
    for (auto z : v) m = std::max(m, std::abs(z));
    return m;
}

}  // namespace nlp::test
