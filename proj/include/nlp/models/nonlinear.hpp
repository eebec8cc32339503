#pragma once

#include <optional>
#include <vector>

#include "nlp/models/system.hpp"
#include "nlp/spectral/field.hpp"

namespace nlp::models {

// N_hat_j(xi) = i xi . p_hat_j(xi), p_j = sum_{h,k} c_{j,h,k} u_h g_k, where
// g_k is the Poisson gradient of species k. Inputs are truncated by the
// dealias mask before the products and the result is truncated again, so
// the quadratic term is alias-free and lives on the retained modes.
class NonlinearOperator {
public:
    // Throws std::invalid_argument when spec and grid disagree on d.
    NonlinearOperator(SystemSpec spec, spectral::TorusGrid grid, std::optional<int> cutoff = std::nullopt);

    // Throws std::invalid_argument on grid or species mismatch.
    spectral::SpectralField operator()(const spectral::SpectralField& u) const;

    const SystemSpec& spec() const { return spec_; }
    const spectral::TorusGrid& grid() const { return grid_; }
    const std::vector<double>& mask() const { return mask_; }
    // True when every coupling entry vanishes, so N == 0.
    bool vanishes() const { return vanishes_; }

private:
    SystemSpec spec_;
    spectral::TorusGrid grid_;
    std::vector<double> mask_;
    std::vector<std::vector<double>> xi_;
    std::vector<std::vector<double>> coupling_tables_;
    bool vanishes_;
};

spectral::SpectralField nonlinear_term(const SystemSpec& spec, const spectral::SpectralField& u);

}  // namespace nlp::models
