#pragma once

#include <span>
#include <vector>

namespace nlp::models {

struct ChandrasekharTerms {
    double radius;
    double laplacian;  // Lap u for u = 2(d-2) r^{-2}
    double transport;  // div(u grad phi) with Lap phi = u
    double residual;   // |laplacian + transport|
};

// Closed-form radial calculus for the singular stationary profile.
// Throws std::invalid_argument for d < 3 or a non-positive radius.
std::vector<ChandrasekharTerms> chandrasekhar_residual(int d, std::span<const double> radii);

}  // namespace nlp::models
