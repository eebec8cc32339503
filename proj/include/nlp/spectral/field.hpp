#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "nlp/spectral/grid.hpp"

namespace nlp::spectral {

using cplx = std::complex<double>;

struct FrequencyDomain {};
struct PhysicalDomain {};

// m complex arrays on a torus lattice, stored species-major. The domain tag
// keeps Fourier coefficients and physical samples from being mixed up.
template <class Domain>
class LatticeArray {
public:
    LatticeArray(TorusGrid grid, int species) : grid_(grid), species_(species), data_(grid.size() * checked(species)) {}

    const TorusGrid& grid() const { return grid_; }
    int species() const { return species_; }

    std::span<cplx> component(int j) { return {data_.data() + offset(j), grid_.size()}; }
    std::span<const cplx> component(int j) const { return {data_.data() + offset(j), grid_.size()}; }

    std::span<cplx> data() { return data_; }
    std::span<const cplx> data() const { return data_; }

    cplx& at(int j, std::size_t flat) { return data_[offset(j) + flat]; }
    const cplx& at(int j, std::size_t flat) const { return data_[offset(j) + flat]; }

private:
    static int checked(int species);
    std::size_t offset(int j) const { return static_cast<std::size_t>(j) * grid_.size(); }

    TorusGrid grid_;
    int species_;
    std::vector<cplx> data_;
};

using SpectralField = LatticeArray<FrequencyDomain>;
using PhysicalField = LatticeArray<PhysicalDomain>;

extern template class LatticeArray<FrequencyDomain>;
extern template class LatticeArray<PhysicalDomain>;

// Continuum-normalised transform: u_hat(xi) = sum_x u(x) e^{-i xi.x} (L/n)^d.
SpectralField forward_transform(const PhysicalField& u);
// Inverse of forward_transform: u(x) = L^{-d} sum_xi u_hat(xi) e^{i xi.x}.
PhysicalField inverse_transform(const SpectralField& u_hat);

// Builds a field from raw samples laid out species-major; throws
// std::invalid_argument when the sample count does not match grid * species.
PhysicalField physical_from_samples(const TorusGrid& grid, int species, std::span<const cplx> samples);

// max |u_hat(-xi) - conj(u_hat(xi))| / max |u_hat|; zero for Hermitian data.
double hermitian_defect(const SpectralField& u_hat);

// max over all species and modes of |u_hat|.
double max_abs(const SpectralField& u_hat);

// max |a - b| over all entries; grids and species counts must agree.
double max_abs_difference(const SpectralField& a, const SpectralField& b);

// Throws std::invalid_argument when the two fields live on different
// grids or carry different species counts.
void require_compatible(const SpectralField& a, const SpectralField& b);

}  // namespace nlp::spectral
