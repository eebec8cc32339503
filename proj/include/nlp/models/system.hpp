#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nlp::models {

enum class Preset { gravitating, debye, nernst_planck, general };

std::string_view to_string(Preset p);
// Throws std::invalid_argument for unknown names.
Preset parse_preset(std::string_view name);

using Point = std::array<double, 3>;
using CouplingProfile = std::function<double(const Point&)>;

// dt u_j = Lap u_j + div( sum_{h,k} c_{j,h,k} u_h grad(E_d * u_k) ).
// Tensor entries are stored at j*m*m + h*m + k.
struct SystemSpec {
    int d = 2;
    int m = 1;
    double alpha = 2.0;
    Preset preset = Preset::gravitating;
    std::vector<double> coupling;
    // Optional spatial profiles; when non-empty (m^3 entries) they replace
    // the constants, evaluated at physical grid points.
    std::vector<CouplingProfile> coupling_fields;

    double c(int j, int h, int k) const { return coupling[(j * m + h) * m + k]; }
    bool has_spatial_coupling() const { return !coupling_fields.empty(); }
};

// gravitating: m=1, c=+1. debye: m=1, c=-1. nernst_planck: m=2 with the
// potential sourced by u_0 - u_1. general: the user tensor (m^3 entries).
// Throws std::invalid_argument for inconsistent m, d or tensor size.
SystemSpec build_preset(Preset preset, int d, int m, std::optional<std::vector<double>> coupling = std::nullopt);

// c_{j,h,k}(x) = c_{j,h,k} * (1 + amplitude * cos(2 pi x_axis / wavelength)).
// A fixed physical wavelength does not rescale with the box, which is what
// breaks scaling covariance.
void modulate_coupling(SystemSpec& spec, double amplitude, int axis, double wavelength);

}  // namespace nlp::models
