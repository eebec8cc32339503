#pragma once

#include <string_view>
#include <vector>

#include "nlp/models/nonlinear.hpp"
#include "nlp/spectral/field.hpp"

namespace nlp::solver {

enum class Scheme { etd2rk, ifrk4, picard };

std::string_view to_string(Scheme s);
Scheme parse_scheme(std::string_view name);

// phi_1(z) = (e^z - 1)/z and phi_2(z) = (e^z - 1 - z)/z^2, series near 0.
double phi1(double z);
double phi2(double z);

// One-step map for u' = -|xi|^2 u + N(u). The heat factor is applied exactly;
// only the Duhamel integral is approximated.
//   etd2rk: Cox-Matthews second-order exponential time differencing.
//   ifrk4:  classical RK4 on the integrating-factor variable.
class Stepper {
public:
    // Throws std::invalid_argument for dt <= 0 or scheme == picard.
    Stepper(const models::NonlinearOperator& op, double dt, Scheme scheme);

    spectral::SpectralField step(const spectral::SpectralField& u) const;
    double dt() const { return dt_; }

private:
    spectral::SpectralField etd2rk(const spectral::SpectralField& u) const;
    spectral::SpectralField ifrk4(const spectral::SpectralField& u) const;

    const models::NonlinearOperator& op_;
    double dt_;
    Scheme scheme_;
    std::vector<double> full_;  // e^{-dt |xi|^2}
    std::vector<double> half_;  // e^{-dt |xi|^2 / 2}
    std::vector<double> w1_;    // dt phi_1(-dt |xi|^2)
    std::vector<double> w2_;    // dt phi_2(-dt |xi|^2)
};

spectral::SpectralField step(const models::SystemSpec& spec, const spectral::SpectralField& u, double dt,
                             Scheme scheme);

}  // namespace nlp::solver
