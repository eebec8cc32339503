#include "nlp/spectral/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nlp/simd/kernels.hpp"
#include "nlp/spectral/fft.hpp"

namespace nlp::spectral {

template <class Domain>
int LatticeArray<Domain>::checked(int species) {
    if (species < 1) throw std::invalid_argument("species count must be >= 1");
    return species;
}

template class LatticeArray<FrequencyDomain>;
template class LatticeArray<PhysicalDomain>;

namespace {

std::vector<int> extents_of(const TorusGrid& g) { return std::vector<int>(g.dim(), g.points_per_axis()); }

}  // namespace

SpectralField forward_transform(const PhysicalField& u) {
    const auto& g = u.grid();
    SpectralField out(g, u.species());
    std::ranges::copy(u.data(), out.data().begin());
    const double w = g.cell_volume();
    const auto ext = extents_of(g);
    for (int j = 0; j < u.species(); ++j) {
        auto c = out.component(j);
        dft_forward(ext, c);
        for (auto& z : c) z *= w;
    }
    return out;
}

PhysicalField inverse_transform(const SpectralField& u_hat) {
    const auto& g = u_hat.grid();
    PhysicalField out(g, u_hat.species());
    std::ranges::copy(u_hat.data(), out.data().begin());
    const double w = 1.0 / std::pow(g.period(), g.dim());
    const auto ext = extents_of(g);
    for (int j = 0; j < u_hat.species(); ++j) {
        auto c = out.component(j);
        dft_backward(ext, c);
        for (auto& z : c) z *= w;
    }
    return out;
}

PhysicalField physical_from_samples(const TorusGrid& grid, int species, std::span<const cplx> samples) {
    PhysicalField out(grid, species);
    if (samples.size() != out.data().size())
        throw std::invalid_argument("sample count does not match grid size times species");
    std::ranges::copy(samples, out.data().begin());
    return out;
}

double hermitian_defect(const SpectralField& u_hat) {
    const auto& g = u_hat.grid();
    const double scale = max_abs(u_hat);
    if (scale == 0.0) return 0.0;
    double worst = 0.0;
    const int n = g.points_per_axis();
    for (int j = 0; j < u_hat.species(); ++j) {
        auto c = u_hat.component(j);
        for (std::size_t i = 0; i < g.size(); ++i) {
            auto s = g.unflatten(i);
            for (int a = 0; a < g.dim(); ++a) s[a] = (n - s[a]) % n;
            const std::size_t mirror = g.flatten(s);
            worst = std::max(worst, std::abs(c[mirror] - std::conj(c[i])));
        }
    }
    return worst / scale;
}

double max_abs(const SpectralField& u_hat) { return simd::active().max_abs(u_hat.data()); }

void require_compatible(const SpectralField& a, const SpectralField& b) {
    if (!(a.grid() == b.grid()) || a.species() != b.species())
        throw std::invalid_argument("fields live on different grids or species counts");
}

double max_abs_difference(const SpectralField& a, const SpectralField& b) {
    require_compatible(a, b);
    double worst = 0.0;
    auto pa = a.data();
    auto pb = b.data();
    for (std::size_t i = 0; i < pa.size(); ++i) worst = std::max(worst, simd::modulus(pa[i] - pb[i]));
    return worst;
}

}  // namespace nlp::spectral
