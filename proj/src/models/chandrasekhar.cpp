#include "nlp/models/chandrasekhar.hpp"

#include <cmath>
#include <stdexcept>

namespace nlp::models {

std::vector<ChandrasekharTerms> chandrasekhar_residual(int d, std::span<const double> radii) {
    if (d < 3) throw std::invalid_argument("the stationary profile needs d >= 3");
    const double c = 2.0 * (d - 2);
    std::vector<ChandrasekharTerms> out;
    out.reserve(radii.size());
    for (double r : radii) {
        if (!(r > 0.0) || !std::isfinite(r)) throw std::invalid_argument("radius must be positive");
        const double u = c / (r * r);
        const double du = -2.0 * c / (r * r * r);
        const double d2u = 6.0 * c / (r * r * r * r);
        // r^{d-1} phi' = integral of s^{d-1} u(s) ds = c r^{d-2} / (d-2).
        const double dphi = c / ((d - 2) * r);
        const double lap = d2u + (d - 1) * du / r;
        // div(u grad phi) = u' phi' + u Lap phi, and Lap phi = u.
        const double transport = du * dphi + u * u;
        out.push_back({r, lap, transport, std::abs(lap + transport)});
    }
    return out;
}

}  // namespace nlp::models
