#include "nlp/diagnostics/norms.hpp"

#include <cmath>
#include <stdexcept>

#include "nlp/simd/kernels.hpp"

namespace nlp::diagnostics {

double weighted_sup_norm(const spectral::PhysicalField& u, double theta, int species) {
    if (!(theta >= 0.0)) throw std::invalid_argument("weight exponent theta must be >= 0");
    if (theta == 0.0) return simd::active().max_abs(u.component(species));
    auto w = spectral::periodic_radius(u.grid());
    for (auto& r : w) r = std::pow(1.0 + r, theta);
    return simd::active().weighted_max_abs(u.component(species), w);
}

double weighted_sup_norm(const spectral::SpectralField& u_hat, double theta, int species) {
    return weighted_sup_norm(spectral::inverse_transform(u_hat), theta, species);
}

double pm_norm(const spectral::SpectralField& u_hat, double a, int species) {
    const auto k2 = spectral::frequency_squared(u_hat.grid());
    auto c = u_hat.component(species);
    double best = 0.0;
    for (std::size_t i = 1; i < k2.size(); ++i) {
        const double m = simd::modulus(c[i]);
        if (m == 0.0) continue;
        best = std::max(best, std::pow(k2[i], 0.5 * a) * m);
    }
    return best;
}

EnvelopeTracker::EnvelopeTracker(double theta, int species) : theta_(theta), species_(species) {
    if (!(theta >= 0.0)) throw std::invalid_argument("weight exponent theta must be >= 0");
}

void EnvelopeTracker::update(double t, const spectral::PhysicalField& u) {
    spatial_ = std::max(spatial_, weighted_sup_norm(u, theta_, species_));
    const double sup = simd::active().max_abs(u.component(species_));
    temporal_ = std::max(temporal_, std::pow(1.0 + t, 0.5 * theta_) * sup);
}

}  // namespace nlp::diagnostics
