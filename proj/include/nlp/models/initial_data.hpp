#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "nlp/spectral/field.hpp"
#include "nlp/spectral/multipliers.hpp"

namespace nlp::models {

enum class InitialKind { weighted_decay, fourier_bump, chandrasekhar_mollified, custom_spectral };

std::string_view to_string(InitialKind k);
InitialKind parse_initial_kind(std::string_view name);

struct InitialDataSpec {
    InitialKind kind = InitialKind::weighted_decay;
    // eta for weighted_decay and chandrasekhar_mollified scaling, A for
    // fourier_bump, physical sup for the custom generators.
    double amplitude = 0.1;
    // Per-species factors; empty means 1 for every species.
    std::vector<double> species_weights;
    double mollifier = 0.5;
    // custom_spectral: random_hermitian | gaussian | snapshot
    std::string generator = "random_hermitian";
    int bandwidth = 8;
    std::uint64_t seed = 1;
    double width = 1.0;
    std::string path;

    bool operator==(const InitialDataSpec&) const = default;
};

// Smooth cutoff equal to 1 where every folded coordinate satisfies
// |y_i| <= 0.3 L and 0 once some |y_i| >= 0.45 L.
double box_cutoff(const spectral::TorusGrid& grid, std::size_t flat);

// exp(-1/(1 - |4(xi - 3 e_1 / 4)|^2)) inside B_{1/4}(3 e_1 / 4), 0 outside.
double bump_profile(const spectral::Frequency& xi, int d);

// eta (1 + |x|_per)^{-2} chi(x), transformed.
spectral::SpectralField weighted_decay(const spectral::TorusGrid& grid, int species, double eta);

// A times the bump normalised to unit lattice L1 mass: sum |u_hat| (2 pi / L)^d = A.
// Throws std::invalid_argument when the lattice is too coarse to resolve the
// bump (frequency spacing above 1/8).
spectral::SpectralField fourier_bump(const spectral::TorusGrid& grid, int species, double A);

// 2(d-2) (|x|_per^2 + eps^2)^{-1} chi(x); d = 3 only.
spectral::SpectralField chandrasekhar_mollified(const spectral::TorusGrid& grid, double eps);

// Hermitian coefficients on |k_i| <= bandwidth from a deterministic generator,
// rescaled so the physical sup equals amplitude.
spectral::SpectralField random_hermitian(const spectral::TorusGrid& grid, int species, int bandwidth,
                                         std::uint64_t seed, double amplitude);

spectral::SpectralField realize(const InitialDataSpec& spec, const spectral::TorusGrid& grid, int species);

}  // namespace nlp::models
