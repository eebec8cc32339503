#include "nlp/models/system.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nlp::models {

std::string_view to_string(Preset p) {
    switch (p) {
        case Preset::gravitating: return "gravitating";
        case Preset::debye: return "debye";
        case Preset::nernst_planck: return "nernst_planck";
        case Preset::general: return "general";
    }
    return "general";
}

Preset parse_preset(std::string_view name) {
    for (Preset p : {Preset::gravitating, Preset::debye, Preset::nernst_planck, Preset::general})
        if (to_string(p) == name) return p;
    throw std::invalid_argument("unknown preset '" + std::string(name) + "'");
}

SystemSpec build_preset(Preset preset, int d, int m, std::optional<std::vector<double>> coupling) {
    if (d != 2 && d != 3) throw std::invalid_argument("dimension must be 2 or 3");
    SystemSpec s;
    s.d = d;
    s.m = m;
    s.preset = preset;
    switch (preset) {
        case Preset::gravitating:
        case Preset::debye:
            if (m != 1) throw std::invalid_argument(std::string(to_string(preset)) + " preset needs m = 1");
            s.coupling = {preset == Preset::gravitating ? 1.0 : -1.0};
            break;
        case Preset::nernst_planck:
            if (m != 2) throw std::invalid_argument("nernst_planck preset needs m = 2");
            // grad phi = g_0 - g_1; species 0 carries -div(u_0 grad phi),
            // species 1 carries +div(u_1 grad phi).
            s.coupling.assign(8, 0.0);
            s.coupling[0 * 4 + 0 * 2 + 0] = -1.0;
            s.coupling[0 * 4 + 0 * 2 + 1] = 1.0;
            s.coupling[1 * 4 + 1 * 2 + 0] = 1.0;
            s.coupling[1 * 4 + 1 * 2 + 1] = -1.0;
            break;
        case Preset::general:
            if (m < 1) throw std::invalid_argument("species count must be >= 1");
            if (!coupling) throw std::invalid_argument("general preset needs a coupling tensor");
            break;
    }
    if (coupling) {
        if (coupling->size() != static_cast<std::size_t>(m * m * m))
            throw std::invalid_argument("coupling tensor must have m^3 entries");
        for (double c : *coupling)
            if (!std::isfinite(c)) throw std::invalid_argument("coupling entries must be finite");
        if (preset != Preset::general && *coupling != s.coupling)
            throw std::invalid_argument("coupling tensor contradicts the preset");
        s.coupling = *coupling;
    }
    return s;
}

void modulate_coupling(SystemSpec& spec, double amplitude, int axis, double wavelength) {
    if (axis < 0 || axis >= spec.d) throw std::invalid_argument("modulation axis out of range");
    if (!(wavelength > 0.0)) throw std::invalid_argument("modulation wavelength must be positive");
    if (!std::isfinite(amplitude)) throw std::invalid_argument("modulation amplitude must be finite");
    spec.coupling_fields.clear();
    for (double c : spec.coupling)
        spec.coupling_fields.push_back([=](const Point& x) {
            return c * (1.0 + amplitude * std::cos(2.0 * std::numbers::pi * x[axis] / wavelength));
        });
}

}  // namespace nlp::models
