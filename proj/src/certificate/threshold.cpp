#include "nlp/certificate/threshold.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "nlp/diagnostics/besov.hpp"

namespace nlp::certificate {
namespace {

double scaled_radius(const Frequency& xi, int d, int k) {
    double s = 0.0;
    for (int a = 0; a < d; ++a) s += xi[a] * xi[a];
    return std::ldexp(std::sqrt(s), -k);
}

}  // namespace

double min_psi_on_support(const LadderLevel& level) {
    double best = std::numeric_limits<double>::infinity();
    const auto& m = level.shape;
    for (std::size_t i = 0; i < m.size(); ++i)
        if (m.values[i] > 0.0) best = std::min(best, diagnostics::psi_hat(scaled_radius(m.point(i), m.d, level.k)));
    return best;
}

std::vector<double> besov_lowerbound(const Ladder& ladder, double log_A, double a, double t) {
    const double log2pi = std::log(2.0 * std::numbers::pi);
    std::vector<double> out;
    for (const auto& level : ladder.levels) {
        const auto& m = level.shape;
        double weighted = 0.0;
        for (std::size_t i = 0; i < m.size(); ++i)
            if (m.values[i] > 0.0) weighted += diagnostics::psi_hat(scaled_radius(m.point(i), m.d, level.k)) * m.values[i];
        weighted *= std::pow(m.h, m.d);
        out.push_back(a * level.k * std::numbers::ln2 - ladder.d * log2pi + level.log_barrier(log_A, t) +
                      std::log(weighted));
    }
    return out;
}

DivergenceRow classify(double A, std::vector<double> log_terms) {
    DivergenceRow row{A, std::move(log_terms), false, false};
    const std::size_t n = row.log_terms.size();
    if (n < 4) return row;
    row.diverging = true;
    for (std::size_t k = 3; k < n; ++k) row.diverging = row.diverging && row.log_terms[k] > row.log_terms[k - 1];
    row.vanishing = row.log_terms[n - 1] < row.log_terms[n - 2] && row.log_terms[n - 2] < row.log_terms[n - 3];
    return row;
}

ThresholdEstimate estimate_threshold(const Ladder& ladder, double a, std::span<const double> A_values) {
    if (ladder.levels.size() < 4) throw std::invalid_argument("threshold estimate needs k_max >= 3");
    ThresholdEstimate est;
    const int d = ladder.d;
    const double base = d * std::log(2.0 * std::numbers::pi) + blowup_time();
    for (const auto& level : ladder.levels) {
        const double L = -level.log_chain / std::numbers::ln2 / std::ldexp(1.0, level.k);
        est.exponents.push_back(L);
        est.level_thresholds.push_back(std::exp(base + L * std::numbers::ln2));
    }
    const std::size_t n = est.exponents.size();
    const double l0 = est.exponents[n - 3], l1 = est.exponents[n - 2], l2 = est.exponents[n - 1];
    const double d1 = l2 - l1, d0 = l1 - l0;
    // Aitken needs a contracting sequence of increments.
    est.exponent_limit = (d0 != 0.0 && d1 / d0 > 0.0 && d1 / d0 < 1.0) ? l2 - d1 * d1 / (d1 - d0) : l2;
    est.a_star = std::exp(base + est.exponent_limit * std::numbers::ln2);
    est.a_closed_form = closed_form_threshold(d);
    for (double A : A_values)
        est.table.push_back(classify(A, besov_lowerbound(ladder, std::log(A), a, blowup_time())));
    return est;
}

}  // namespace nlp::certificate
