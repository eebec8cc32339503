#pragma once

#include <array>
#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "nlp/spectral/field.hpp"

namespace nlp::spectral {

using Frequency = std::array<double, TorusGrid::kMaxDim>;

// Diagonal Fourier multiplier: out(xi) = symbol(xi) * in(xi) for xi != 0 and
// out(0) = zero_mode_value * in(0).
struct MultiplierSpec {
    std::function<cplx(const Frequency&)> symbol;
    cplx zero_mode_value{1.0, 0.0};
};

SpectralField apply_multiplier(const SpectralField& field, const MultiplierSpec& spec);

// e^{-t|xi|^2}.
MultiplierSpec heat_propagator(double t);
// Tabulated e^{-t|xi|^2} in flat storage order.
std::vector<double> heat_symbol(const TorusGrid& grid, double t);

// In place: every species is multiplied pointwise by the real table s.
void apply_real_symbol(SpectralField& field, std::span<const double> s);

// Gradient of the potential with Laplacian equal to each species:
// grad phi_hat = -i xi u_hat / |xi|^2, zero mode 0. Output species j*d + c
// holds component c of species j.
SpectralField poisson_gradient(const SpectralField& field);

// 1 on modes with every |k_i| <= K, 0 elsewhere, K = floor(n/3) or the
// smaller explicit cutoff when given.
std::vector<double> dealias_mask(const TorusGrid& grid, std::optional<int> cutoff = std::nullopt);

// Pointwise product of physical samples, transformed and truncated by the 2/3
// rule. Species are multiplied pairwise. Throws std::invalid_argument on grid
// or species mismatch.
SpectralField dealiased_product(const PhysicalField& a, const PhysicalField& b);

}  // namespace nlp::spectral
