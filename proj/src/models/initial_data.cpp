#include "nlp/models/initial_data.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "nlp/spectral/snapshot.hpp"
#include "nlp/util/smooth.hpp"

namespace nlp::models {

using spectral::cplx;
using spectral::PhysicalField;
using spectral::SpectralField;
using spectral::TorusGrid;

std::string_view to_string(InitialKind k) {
    switch (k) {
        case InitialKind::weighted_decay: return "weighted_decay";
        case InitialKind::fourier_bump: return "fourier_bump";
        case InitialKind::chandrasekhar_mollified: return "chandrasekhar_mollified";
        case InitialKind::custom_spectral: return "custom_spectral";
    }
    return "custom_spectral";
}

InitialKind parse_initial_kind(std::string_view name) {
    for (auto k : {InitialKind::weighted_decay, InitialKind::fourier_bump, InitialKind::chandrasekhar_mollified,
                   InitialKind::custom_spectral})
        if (to_string(k) == name) return k;
    throw std::invalid_argument("unknown initial data kind '" + std::string(name) + "'");
}

double box_cutoff(const TorusGrid& grid, std::size_t flat) {
    const auto w = grid.wavenumbers(flat);
    double chi = 1.0;
    for (int a = 0; a < grid.dim(); ++a) {
        const double s = std::abs(static_cast<double>(w[a])) / grid.points_per_axis();
        chi *= 1.0 - util::smooth_step((s - 0.3) / 0.15);
    }
    return chi;
}

double bump_profile(const spectral::Frequency& xi, int d) {
    double r2 = 0.0;
    for (int a = 0; a < d; ++a) {
        const double y = 4.0 * (xi[a] - (a == 0 ? 0.75 : 0.0));
        r2 += y * y;
    }
    return r2 < 1.0 ? std::exp(-1.0 / (1.0 - r2)) : 0.0;
}

namespace {

double weight(const std::vector<double>& w, int j) { return w.empty() ? 1.0 : w.at(j); }

SpectralField from_profile(const TorusGrid& grid, int species, auto&& profile) {
    PhysicalField u(grid, species);
    const auto r = spectral::periodic_radius(grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double v = profile(r[i]) * box_cutoff(grid, i);
        for (int j = 0; j < species; ++j) u.at(j, i) = v;
    }
    return spectral::forward_transform(u);
}

// Uniform in [-1, 1) from the raw 64-bit stream; independent of the
// standard library's distribution implementations.
double uniform_pm1(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-52 - 1.0; }

}  // namespace

SpectralField weighted_decay(const TorusGrid& grid, int species, double eta) {
    return from_profile(grid, species, [eta](double r) { return eta / ((1.0 + r) * (1.0 + r)); });
}

SpectralField fourier_bump(const TorusGrid& grid, int species, double A) {
    if (grid.frequency_spacing() > 0.125)
        throw std::invalid_argument("frequency lattice too coarse for the bump (need period >= 16 pi)");
    SpectralField f(grid, species);
    double mass = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto k = grid.wavenumbers(i);
        spectral::Frequency xi{0.0, 0.0, 0.0};
        for (int a = 0; a < grid.dim(); ++a) xi[a] = grid.frequency(k[a]);
        const double b = bump_profile(xi, grid.dim());
        f.at(0, i) = b;
        mass += b;
    }
    mass *= grid.frequency_cell();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double v = A * f.at(0, i).real() / mass;
        for (int j = 0; j < species; ++j) f.at(j, i) = v;
    }
    return f;
}

SpectralField chandrasekhar_mollified(const TorusGrid& grid, double eps) {
    if (grid.dim() != 3) throw std::invalid_argument("Chandrasekhar data needs d = 3");
    if (!(eps > 0.0)) throw std::invalid_argument("mollification scale must be positive");
    return from_profile(grid, 1, [eps](double r) { return 2.0 / (r * r + eps * eps); });
}

SpectralField random_hermitian(const TorusGrid& grid, int species, int bandwidth, std::uint64_t seed,
                               double amplitude) {
    if (bandwidth < 0 || bandwidth >= grid.points_per_axis() / 2)
        throw std::invalid_argument("random data bandwidth must lie in [0, n/2)");
    const int n = grid.points_per_axis();
    SpectralField raw(grid, species);
    std::mt19937_64 rng(seed);
    for (int j = 0; j < species; ++j)
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const auto k = grid.wavenumbers(i);
            bool inside = true;
            for (int a = 0; a < grid.dim(); ++a) inside = inside && std::abs(k[a]) <= bandwidth;
            const double re = uniform_pm1(rng), im = uniform_pm1(rng);
            if (inside) raw.at(j, i) = {re, im};
        }
    SpectralField f(grid, species);
    for (int j = 0; j < species; ++j)
        for (std::size_t i = 0; i < grid.size(); ++i) {
            auto s = grid.unflatten(i);
            for (int a = 0; a < grid.dim(); ++a) s[a] = (n - s[a]) % n;
            f.at(j, i) = 0.5 * (raw.at(j, i) + std::conj(raw.at(j, grid.flatten(s))));
        }
    const auto u = spectral::inverse_transform(f);
    for (int j = 0; j < species; ++j) {
        double sup = 0.0;
        for (auto z : u.component(j)) sup = std::max(sup, std::abs(z.real()));
        const double scale = sup > 0.0 ? amplitude / sup : 0.0;
        for (auto& z : f.component(j)) z *= scale;
    }
    return f;
}

SpectralField realize(const InitialDataSpec& spec, const TorusGrid& grid, int species) {
    if (!spec.species_weights.empty() && spec.species_weights.size() != static_cast<std::size_t>(species))
        throw std::invalid_argument("species_weights must have one entry per species");
    if (!std::isfinite(spec.amplitude)) throw std::invalid_argument("initial amplitude must be finite");
    SpectralField f(grid, species);
    switch (spec.kind) {
        case InitialKind::weighted_decay: f = weighted_decay(grid, species, spec.amplitude); break;
        case InitialKind::fourier_bump: f = fourier_bump(grid, species, spec.amplitude); break;
        case InitialKind::chandrasekhar_mollified: {
            if (species != 1) throw std::invalid_argument("Chandrasekhar data is single-species");
            f = chandrasekhar_mollified(grid, spec.mollifier);
            for (auto& z : f.data()) z *= spec.amplitude;
            break;
        }
        case InitialKind::custom_spectral:
            if (spec.generator == "random_hermitian") {
                f = random_hermitian(grid, species, spec.bandwidth, spec.seed, spec.amplitude);
            } else if (spec.generator == "gaussian") {
                if (!(spec.width > 0.0)) throw std::invalid_argument("gaussian width must be positive");
                const double w2 = 2.0 * spec.width * spec.width;
                f = from_profile(grid, species, [&](double r) { return spec.amplitude * std::exp(-r * r / w2); });
            } else if (spec.generator == "snapshot") {
                auto snap = spectral::read_snapshot(spec.path);
                if (!(snap.field.grid() == grid) || snap.field.species() != species)
                    throw std::invalid_argument("snapshot grid or species count does not match the run");
                f = std::move(snap.field);
            } else {
                throw std::invalid_argument("unknown custom_spectral generator '" + spec.generator + "'");
            }
            break;
    }
    for (int j = 0; j < species; ++j) {
        const double w = weight(spec.species_weights, j);
        if (w != 1.0)
            for (auto& z : f.component(j)) z *= w;
    }
    return f;
}

}  // namespace nlp::models
