#pragma once

#include <string>
#include <vector>

#include "nlp/diagnostics/besov.hpp"
#include "nlp/spectral/field.hpp"

namespace nlp::diagnostics {

struct NormSpec {
    std::vector<double> thetas{0.0, 2.0};
    std::vector<double> pm_indices{0.0};
    bool besov_enabled = true;
    BesovConfig besov;

    bool operator==(const NormSpec&) const = default;
};

struct SpeciesNorms {
    double sup = 0.0;
    std::vector<double> weighted;  // one per theta
    std::vector<double> pm;        // one per PM index
    double besov = 0.0;
    spectral::cplx mass;           // zero-mode coefficient
};

struct NormReport {
    double time = 0.0;
    std::vector<SpeciesNorms> species;
    double max_coeff = 0.0;
    // Set when the field has non-finite coefficients; the norms are then NaN.
    bool overflow = false;
};

NormReport compute_report(double time, const spectral::SpectralField& u_hat, const NormSpec& spec);

// Self-describing header: time, per species j: sup_j, linf_theta<t>_j,
// pm_a<a>_j, besov_a<a>_j, mass_re_j, mass_im_j, then max_coeff, overflow.
std::string csv_header(const NormSpec& spec, int species);
// Values printed with 17 significant digits, so rows are bit-reproducible.
std::string csv_row(const NormReport& report);

}  // namespace nlp::diagnostics
