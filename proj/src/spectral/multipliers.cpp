#include "nlp/spectral/multipliers.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nlp/simd/kernels.hpp"

namespace nlp::spectral {

SpectralField apply_multiplier(const SpectralField& field, const MultiplierSpec& spec) {
    const auto& g = field.grid();
    std::vector<cplx> table(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (i == 0) {
            table[i] = spec.zero_mode_value;
            continue;
        }
        const auto k = g.wavenumbers(i);
        Frequency xi{0.0, 0.0, 0.0};
        for (int a = 0; a < g.dim(); ++a) xi[a] = g.frequency(k[a]);
        table[i] = spec.symbol(xi);
    }
    SpectralField out(g, field.species());
    for (int j = 0; j < field.species(); ++j) simd::active().multiply(field.component(j), table, out.component(j));
    return out;
}

MultiplierSpec heat_propagator(double t) {
    return {[t](const Frequency& xi) {
                return cplx(std::exp(-t * (xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2])), 0.0);
            },
            cplx(1.0, 0.0)};
}

std::vector<double> heat_symbol(const TorusGrid& grid, double t) {
    auto s = frequency_squared(grid);
    for (auto& v : s) v = std::exp(-t * v);
    return s;
}

void apply_real_symbol(SpectralField& field, std::span<const double> s) {
    if (s.size() != field.grid().size()) throw std::invalid_argument("symbol table does not match grid");
    for (int j = 0; j < field.species(); ++j) simd::active().scale_by_real(field.component(j), s);
}

SpectralField poisson_gradient(const SpectralField& field) {
    const auto& g = field.grid();
    const int d = g.dim();
    const auto k2 = frequency_squared(g);
    SpectralField out(g, field.species() * d);
    for (int c = 0; c < d; ++c) {
        const auto xi = frequency_component(g, c);
        for (int j = 0; j < field.species(); ++j) {
            auto in = field.component(j);
            auto dst = out.component(j * d + c);
            dst[0] = 0.0;
            for (std::size_t i = 1; i < g.size(); ++i) dst[i] = cplx(0.0, -xi[i] / k2[i]) * in[i];
        }
    }
    return out;
}

std::vector<double> dealias_mask(const TorusGrid& grid, std::optional<int> cutoff) {
    int K = grid.points_per_axis() / 3;
    if (cutoff) {
        if (*cutoff < 0) throw std::invalid_argument("dealias cutoff must be >= 0");
        K = std::min(K, *cutoff);
    }
    std::vector<double> mask(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto k = grid.wavenumbers(i);
        bool keep = true;
        for (int a = 0; a < grid.dim(); ++a) keep = keep && std::abs(k[a]) <= K;
        mask[i] = keep ? 1.0 : 0.0;
    }
    return mask;
}

SpectralField dealiased_product(const PhysicalField& a, const PhysicalField& b) {
    if (!(a.grid() == b.grid()) || a.species() != b.species())
        throw std::invalid_argument("dealiased_product: operands differ in grid or species");
    PhysicalField prod(a.grid(), a.species());
    simd::active().multiply(a.data(), b.data(), prod.data());
    auto out = forward_transform(prod);
    apply_real_symbol(out, dealias_mask(a.grid()));
    return out;
}

}  // namespace nlp::spectral
