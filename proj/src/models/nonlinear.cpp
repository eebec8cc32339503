#include "nlp/models/nonlinear.hpp"

#include <stdexcept>

#include "nlp/parallel.hpp"
#include "nlp/simd/kernels.hpp"
#include "nlp/spectral/multipliers.hpp"

namespace nlp::models {

using spectral::cplx;
using spectral::PhysicalField;
using spectral::SpectralField;

NonlinearOperator::NonlinearOperator(SystemSpec spec, spectral::TorusGrid grid, std::optional<int> cutoff)
    : spec_(std::move(spec)), grid_(grid), mask_(spectral::dealias_mask(grid, cutoff)), vanishes_(true) {
    if (spec_.d != grid_.dim()) throw std::invalid_argument("system dimension differs from grid dimension");
    const std::size_t m3 = static_cast<std::size_t>(spec_.m) * spec_.m * spec_.m;
    if (spec_.coupling.size() != m3) throw std::invalid_argument("coupling tensor must have m^3 entries");
    for (int a = 0; a < grid_.dim(); ++a) xi_.push_back(spectral::frequency_component(grid_, a));
    if (spec_.has_spatial_coupling()) {
        if (spec_.coupling_fields.size() != m3) throw std::invalid_argument("coupling fields must have m^3 entries");
        for (const auto& profile : spec_.coupling_fields) {
            std::vector<double> table(grid_.size());
            for (std::size_t i = 0; i < grid_.size(); ++i) table[i] = profile(spectral::physical_point(grid_, i));
            for (double v : table)
                if (v != 0.0) vanishes_ = false;
            coupling_tables_.push_back(std::move(table));
        }
    } else {
        for (double c : spec_.coupling)
            if (c != 0.0) vanishes_ = false;
    }
}

SpectralField NonlinearOperator::operator()(const SpectralField& u) const {
    if (!(u.grid() == grid_) || u.species() != spec_.m)
        throw std::invalid_argument("field does not match the nonlinear operator's grid or species");
    const int m = spec_.m;
    const int d = grid_.dim();
    SpectralField out(grid_, m);
    if (vanishes_) return out;

    auto masked = u;
    spectral::apply_real_symbol(masked, mask_);
    const PhysicalField phys = spectral::inverse_transform(masked);
    const PhysicalField grad = spectral::inverse_transform(spectral::poisson_gradient(masked));

    const auto& k = simd::active();
    PhysicalField flux(grid_, m * d);
    parallel_for(static_cast<std::size_t>(m * d), [&](std::size_t slot) {
        const int j = static_cast<int>(slot) / d;
        const int c = static_cast<int>(slot) % d;
        auto dst = flux.component(j * d + c);
        for (int h = 0; h < m; ++h)
            for (int s = 0; s < m; ++s) {
                const std::size_t idx = (static_cast<std::size_t>(j) * m + h) * m + s;
                if (coupling_tables_.empty()) {
                    const double coef = spec_.coupling[idx];
                    if (coef != 0.0) k.accumulate_product(dst, phys.component(h), grad.component(s * d + c), coef);
                } else {
                    k.accumulate_product_field(dst, phys.component(h), grad.component(s * d + c),
                                               coupling_tables_[idx]);
                }
            }
    });

    const SpectralField flux_hat = spectral::forward_transform(flux);
    for (int j = 0; j < m; ++j) {
        auto dst = out.component(j);
        for (int c = 0; c < d; ++c) {
            auto src = flux_hat.component(j * d + c);
            const auto& xi = xi_[c];
            for (std::size_t i = 0; i < grid_.size(); ++i) dst[i] += cplx(0.0, xi[i] * mask_[i]) * src[i];
        }
        dst[0] = 0.0;
    }
    return out;
}

SpectralField nonlinear_term(const SystemSpec& spec, const SpectralField& u) {
    return NonlinearOperator(spec, u.grid())(u);
}

}  // namespace nlp::models
