#pragma once

#include <span>
#include <vector>

#include "nlp/certificate/ladder.hpp"

namespace nlp::certificate {

// Log lower bounds for the Besov norm at time t, one per level:
//   a k ln2 - d ln(2 pi) + ln(barrier amplitude at t) + ln(h^d sum psi_hat(2^{-k} xi) m_k(xi)).
// Levels with t < t_k give -infinity.
std::vector<double> besov_lowerbound(const Ladder& ladder, double log_A, double a, double t);

// Smallest min over lattice points of supp m_k of psi_hat(2^{-k} xi); the
// lower-bound chain relies on it being >= 1.
double min_psi_on_support(const LadderLevel& level);

struct DivergenceRow {
    double A = 0.0;
    std::vector<double> log_terms;
    // Strictly increasing from level 2 on.
    bool diverging = false;
    // Strictly decreasing over the last three levels.
    bool vanishing = false;
};

struct ThresholdEstimate {
    // Per-level exponent L_k = -log2(C_k) / 2^k and the matching threshold
    // (2 pi)^d e^{t*} 2^{L_k}.
    std::vector<double> exponents;
    std::vector<double> level_thresholds;
    // Aitken limit of the last three exponents.
    double exponent_limit = 0.0;
    double a_star = 0.0;
    double a_closed_form = 0.0;
    std::vector<DivergenceRow> table;
};

// Threshold from the measured chain; the table evaluates besov_lowerbound at
// t* for each A. Throws std::invalid_argument when the ladder has fewer than
// four levels (k_max < 3).
ThresholdEstimate estimate_threshold(const Ladder& ladder, double a, std::span<const double> A_values);

// Divergence flags for one row of log terms.
DivergenceRow classify(double A, std::vector<double> log_terms);

}  // namespace nlp::certificate
