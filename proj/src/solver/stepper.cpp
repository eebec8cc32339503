#include "nlp/solver/stepper.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "nlp/simd/kernels.hpp"
#include "nlp/spectral/multipliers.hpp"

namespace nlp::solver {

using spectral::SpectralField;

std::string_view to_string(Scheme s) {
    switch (s) {
        case Scheme::etd2rk: return "etd2rk";
        case Scheme::ifrk4: return "ifrk4";
        case Scheme::picard: return "picard";
    }
    return "picard";
}

Scheme parse_scheme(std::string_view name) {
    for (auto s : {Scheme::etd2rk, Scheme::ifrk4, Scheme::picard})
        if (to_string(s) == name) return s;
    throw std::invalid_argument("unknown scheme '" + std::string(name) + "'");
}

double phi1(double z) {
    if (z == 0.0) return 1.0;
    return std::expm1(z) / z;
}

double phi2(double z) {
    if (std::abs(z) < 0.05) {
        // 1/2 + z/3! + z^2/4! + ... through z^8.
        double term = 0.5, sum = 0.5;
        for (int k = 3; k <= 10; ++k) {
            term *= z / k;
            sum += term;
        }
        return sum;
    }
    return (std::expm1(z) - z) / (z * z);
}

Stepper::Stepper(const models::NonlinearOperator& op, double dt, Scheme scheme) : op_(op), dt_(dt), scheme_(scheme) {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("time step must be positive");
    if (scheme == Scheme::picard) throw std::invalid_argument("picard is not a one-step scheme");
    const auto k2 = spectral::frequency_squared(op.grid());
    const std::size_t n = k2.size();
    full_.resize(n);
    half_.resize(n);
    w1_.resize(n);
    w2_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double z = -dt * k2[i];
        full_[i] = std::exp(z);
        half_[i] = std::exp(0.5 * z);
        w1_[i] = dt * phi1(z);
        w2_[i] = dt * phi2(z);
    }
}

SpectralField Stepper::step(const SpectralField& u) const {
    return scheme_ == Scheme::etd2rk ? etd2rk(u) : ifrk4(u);
}

SpectralField Stepper::etd2rk(const SpectralField& u) const {
    const auto& k = simd::active();
    const SpectralField n0 = op_(u);
    SpectralField a = u;
    spectral::apply_real_symbol(a, full_);
    SpectralField t = n0;
    spectral::apply_real_symbol(t, w1_);
    k.combine(a.data(), a.data(), 1.0, t.data());

    SpectralField diff = op_(a);
    k.combine(diff.data(), diff.data(), -1.0, n0.data());
    spectral::apply_real_symbol(diff, w2_);
    k.combine(a.data(), a.data(), 1.0, diff.data());
    return a;
}

SpectralField Stepper::ifrk4(const SpectralField& u) const {
    const auto& k = simd::active();
    const double h = dt_;
    const int m = u.species();
    auto per_species = [&](SpectralField& out, const std::vector<double>& s, const SpectralField& a, double alpha,
                           const SpectralField& b) {
        for (int j = 0; j < m; ++j) k.propagate_combine(out.component(j), s, a.component(j), alpha, b.component(j));
    };

    const SpectralField k1 = op_(u);
    SpectralField stage(u.grid(), m);
    per_species(stage, half_, u, 0.5 * h, k1);  // E (u + h/2 k1)
    const SpectralField k2 = op_(stage);

    SpectralField eu = u;
    spectral::apply_real_symbol(eu, half_);  // E u
    k.combine(stage.data(), eu.data(), 0.5 * h, k2.data());
    const SpectralField k3 = op_(stage);

    SpectralField ek3 = k3;
    spectral::apply_real_symbol(ek3, half_);
    SpectralField e2u = u;
    spectral::apply_real_symbol(e2u, full_);
    k.combine(stage.data(), e2u.data(), h, ek3.data());  // E^2 u + h E k3
    const SpectralField k4 = op_(stage);

    // E^2 u + h/6 (E^2 k1 + 2 E (k2 + k3) + k4)
    SpectralField acc = k2;
    k.combine(acc.data(), acc.data(), 1.0, k3.data());
    SpectralField inner = k1;  // E (E k1 + 2 (k2 + k3)) + k4
    spectral::apply_real_symbol(inner, half_);
    k.combine(inner.data(), inner.data(), 2.0, acc.data());
    spectral::apply_real_symbol(inner, half_);
    k.combine(inner.data(), inner.data(), 1.0, k4.data());
    k.combine(e2u.data(), e2u.data(), h / 6.0, inner.data());
    return e2u;
}

SpectralField step(const models::SystemSpec& spec, const SpectralField& u, double dt, Scheme scheme) {
    const models::NonlinearOperator op(spec, u.grid());
    return Stepper(op, dt, scheme).step(u);
}

}  // namespace nlp::solver
