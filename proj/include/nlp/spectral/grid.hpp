#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace nlp::spectral {

// Uniform periodic grid on [0, L)^d with its dual frequency lattice
// xi = 2*pi*k/L, k in {-n/2, ..., n/2-1}^d.
//
// Flat storage is row-major with axis 0 slowest. Along each axis, storage
// index i holds wavenumber i for i < n/2 and i - n otherwise (FFT order).
class TorusGrid {
public:
    static constexpr int kMaxDim = 3;
    using Index = std::array<int, kMaxDim>;

    // Throws std::invalid_argument unless d in {2,3}, n a power of two >= 8,
    // period > 0.
    TorusGrid(int d, int n, double period);

    int dim() const { return d_; }
    int points_per_axis() const { return n_; }
    double period() const { return period_; }
    std::size_t size() const { return size_; }

    double spacing() const;            // L/n
    double frequency_spacing() const;  // 2*pi/L
    double cell_volume() const;        // (L/n)^d, physical quadrature weight
    double frequency_cell() const;     // (2*pi/L)^d, frequency lattice cell

    int wavenumber(int storage_index) const { return storage_index < n_ / 2 ? storage_index : storage_index - n_; }
    int storage_index(int wavenumber) const { return wavenumber >= 0 ? wavenumber : wavenumber + n_; }
    double frequency(int wavenumber) const;

    Index unflatten(std::size_t flat) const;
    std::size_t flatten(const Index& storage) const;
    // Flat index of the mode with the given integer wavenumbers; wavenumbers
    // must lie in [-n/2, n/2).
    std::size_t mode_index(const Index& wavenumbers) const;
    Index wavenumbers(std::size_t flat) const;

    bool operator==(const TorusGrid& other) const = default;

private:
    int d_;
    int n_;
    double period_;
    std::size_t size_;
};

// Per-mode tables, flat storage order.
std::vector<double> frequency_component(const TorusGrid& grid, int axis);
std::vector<double> frequency_squared(const TorusGrid& grid);

// Distance from each physical grid point x = i*L/n to the nearest periodic
// image of the origin.
std::vector<double> periodic_radius(const TorusGrid& grid);

// Physical coordinate along each axis, in [0, L).
std::array<double, TorusGrid::kMaxDim> physical_point(const TorusGrid& grid, std::size_t flat);

bool is_power_of_two(int n);

}  // namespace nlp::spectral
