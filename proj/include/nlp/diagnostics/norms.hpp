#pragma once

#include "nlp/spectral/field.hpp"

namespace nlp::diagnostics {

// max_x (1 + |x|_per)^theta |u_j(x)|, |x|_per the distance to the nearest
// periodic image of the origin. Max reductions do not depend on order.
// Throws std::invalid_argument for theta < 0.
double weighted_sup_norm(const spectral::PhysicalField& u, double theta, int species = 0);
double weighted_sup_norm(const spectral::SpectralField& u_hat, double theta, int species = 0);

// max over nonzero lattice frequencies of |xi|^a |u_hat_j(xi)|. The zero
// mode is never included; callers report it separately as the mass.
double pm_norm(const spectral::SpectralField& u_hat, double a, int species = 0);

// Running envelopes of a trajectory for the space E_theta:
// spatial  = sup_t sup_x (1 + |x|)^theta |u(x,t)|,
// temporal = sup_t (1 + t)^{theta/2} sup_x |u(x,t)|.
class EnvelopeTracker {
public:
    explicit EnvelopeTracker(double theta, int species = 0);
    void update(double t, const spectral::PhysicalField& u);
    double theta() const { return theta_; }
    double spatial() const { return spatial_; }
    double temporal() const { return temporal_; }

private:
    double theta_;
    int species_;
    double spatial_ = 0.0;
    double temporal_ = 0.0;
};

}  // namespace nlp::diagnostics
