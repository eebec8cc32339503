#include "nlp/diagnostics/besov.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "nlp/simd/kernels.hpp"
#include "nlp/spectral/multipliers.hpp"
#include "nlp/util/smooth.hpp"

namespace nlp::diagnostics {

double psi_hat(double r) {
    constexpr double lo = 1.0 / 3.0, mid_lo = 0.5, mid_hi = 1.0, hi = 4.0 / 3.0;
    if (r <= lo || r >= hi) return 0.0;
    if (r < mid_lo) return util::smooth_step((r - lo) / (mid_lo - lo));
    if (r <= mid_hi) return 1.0;
    return 1.0 - util::smooth_step((r - mid_hi) / (hi - mid_hi));
}

BesovResult besov_norm(const spectral::SpectralField& u_hat, const BesovConfig& cfg, int species) {
    if (cfg.k_min > cfg.k_max) throw std::invalid_argument("Besov k range is empty");
    const auto& g = u_hat.grid();
    const int d = g.dim();
    const auto k2 = spectral::frequency_squared(g);
    spectral::SpectralField one(g, 1);
    BesovResult res;
    for (int k = cfg.k_min; k <= cfg.k_max; ++k) {
        const double shrink = std::ldexp(1.0, -k);
        const double amp = std::ldexp(1.0, -d * k);
        bool any = false;
        auto src = u_hat.component(species);
        auto dst = one.component(0);
        for (std::size_t i = 0; i < g.size(); ++i) {
            const double w = psi_hat(shrink * std::sqrt(k2[i]));
            dst[i] = (amp * w) * src[i];
            any = any || (w != 0.0 && src[i] != spectral::cplx{});
        }
        double block = 0.0;
        if (any) {
            const auto phys = spectral::inverse_transform(one);
            block = std::pow(2.0, (cfg.a + d) * k) * simd::active().max_abs(phys.data());
        }
        res.blocks.push_back({k, block});
        res.norm = std::max(res.norm, block);
    }
    return res;
}

double embedding_bound(const spectral::TorusGrid& grid, double a_prime, int k_min, int k_max) {
    const int d = grid.dim();
    const auto k2 = spectral::frequency_squared(grid);
    double best = 0.0;
    for (int k = k_min; k <= k_max; ++k) {
        const double shrink = std::ldexp(1.0, -k);
        double sum = 0.0;
        for (std::size_t i = 1; i < k2.size(); ++i) {
            const double z = shrink * std::sqrt(k2[i]);
            const double w = psi_hat(z);
            if (w != 0.0) sum += w * std::pow(z, -a_prime);
        }
        sum *= grid.frequency_cell() * std::ldexp(1.0, -d * k) / std::pow(2.0 * std::numbers::pi, d);
        best = std::max(best, sum);
    }
    return best;
}

double embedding_constant(int d, double a_prime) {
    using boost::math::quadrature::gauss_kronrod;
    auto f = [&](double r) { return psi_hat(r) * std::pow(r, d - 1 - a_prime); };
    const double radial = gauss_kronrod<double, 61>::integrate(f, 1.0 / 3.0, 0.5, 10, 1e-14) +
                          gauss_kronrod<double, 61>::integrate(f, 0.5, 1.0, 10, 1e-14) +
                          gauss_kronrod<double, 61>::integrate(f, 1.0, 4.0 / 3.0, 10, 1e-14);
    const double sphere = d == 2 ? 2.0 * std::numbers::pi : 4.0 * std::numbers::pi;
    return sphere * radial / std::pow(2.0 * std::numbers::pi, d);
}

}  // namespace nlp::diagnostics
