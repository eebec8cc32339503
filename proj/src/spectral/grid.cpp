#include "nlp/spectral/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace nlp::spectral {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

TorusGrid::TorusGrid(int d, int n, double period) : d_(d), n_(n), period_(period), size_(1) {
    if (d != 2 && d != 3) throw std::invalid_argument("grid dimension must be 2 or 3, got " + std::to_string(d));
    if (n < 8 || !is_power_of_two(n))
        throw std::invalid_argument("points per axis must be a power of two >= 8, got " + std::to_string(n));
    if (!(period > 0.0) || !std::isfinite(period)) throw std::invalid_argument("grid period must be positive");
    for (int a = 0; a < d; ++a) size_ *= static_cast<std::size_t>(n);
}

double TorusGrid::spacing() const { return period_ / n_; }
double TorusGrid::frequency_spacing() const { return 2.0 * std::numbers::pi / period_; }
double TorusGrid::cell_volume() const { return std::pow(spacing(), d_); }
double TorusGrid::frequency_cell() const { return std::pow(frequency_spacing(), d_); }
double TorusGrid::frequency(int k) const { return 2.0 * std::numbers::pi * k / period_; }

TorusGrid::Index TorusGrid::unflatten(std::size_t flat) const {
    Index idx{0, 0, 0};
    for (int a = d_ - 1; a >= 0; --a) {
        idx[a] = static_cast<int>(flat % n_);
        flat /= n_;
    }
    return idx;
}

std::size_t TorusGrid::flatten(const Index& storage) const {
    std::size_t flat = 0;
    for (int a = 0; a < d_; ++a) flat = flat * n_ + static_cast<std::size_t>(storage[a]);
    return flat;
}

std::size_t TorusGrid::mode_index(const Index& k) const {
    Index s{0, 0, 0};
    for (int a = 0; a < d_; ++a) {
        if (k[a] < -n_ / 2 || k[a] >= n_ / 2) throw std::out_of_range("wavenumber outside the lattice");
        s[a] = storage_index(k[a]);
    }
    return flatten(s);
}

TorusGrid::Index TorusGrid::wavenumbers(std::size_t flat) const {
    Index s = unflatten(flat);
    for (int a = 0; a < d_; ++a) s[a] = wavenumber(s[a]);
    return s;
}

std::vector<double> frequency_component(const TorusGrid& grid, int axis) {
    std::vector<double> out(grid.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = grid.frequency(grid.wavenumbers(i)[axis]);
    return out;
}

std::vector<double> frequency_squared(const TorusGrid& grid) {
    std::vector<double> out(grid.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const auto k = grid.wavenumbers(i);
        double s = 0.0;
        for (int a = 0; a < grid.dim(); ++a) {
            const double xi = grid.frequency(k[a]);
            s += xi * xi;
        }
        out[i] = s;
    }
    return out;
}

std::vector<double> periodic_radius(const TorusGrid& grid) {
    std::vector<double> out(grid.size());
    const double h = grid.spacing();
    for (std::size_t i = 0; i < out.size(); ++i) {
        // Same folding as wavenumbers: index j and j - n are the two images.
        const auto w = grid.wavenumbers(i);
        double s = 0.0;
        for (int a = 0; a < grid.dim(); ++a) {
            const double y = w[a] * h;
            s += y * y;
        }
        out[i] = std::sqrt(s);
    }
    return out;
}

std::array<double, TorusGrid::kMaxDim> physical_point(const TorusGrid& grid, std::size_t flat) {
    const auto s = grid.unflatten(flat);
    std::array<double, TorusGrid::kMaxDim> x{0.0, 0.0, 0.0};
    for (int a = 0; a < grid.dim(); ++a) x[a] = s[a] * grid.spacing();
    return x;
}

}  // namespace nlp::spectral
