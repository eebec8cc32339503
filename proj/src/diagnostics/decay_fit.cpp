#include "nlp/diagnostics/decay_fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace nlp::diagnostics {
namespace {

// Fits v = alpha + beta x; returns (alpha, beta).
std::pair<double, double> line_fit(const std::vector<double>& x, const std::vector<double>& v) {
    const double n = static_cast<double>(x.size());
    double sx = 0.0, sv = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sv += v[i];
    }
    const double mx = sx / n, mv = sv / n;
    double sxx = 0.0, sxv = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxv += (x[i] - mx) * (v[i] - mv);
    }
    if (sxx == 0.0) throw std::invalid_argument("decay fit needs distinct sample times");
    const double beta = sxv / sxx;
    return {mv - beta * mx, beta};
}

void require_sizes(std::span<const double> t, std::span<const double> y, std::size_t minimum) {
    if (t.size() != y.size()) throw std::invalid_argument("time and value series differ in length");
    if (t.size() < minimum) throw std::invalid_argument("too few samples for the decay fit");
}

}  // namespace

DecayFit fit_algebraic(std::span<const double> t, std::span<const double> y) {
    require_sizes(t, y, 10);
    std::vector<double> x, v;
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (!(y[i] > 0.0)) throw std::invalid_argument("decay fit needs positive values");
        if (!(t[i] > -1.0)) throw std::invalid_argument("decay fit needs t > -1");
        x.push_back(std::log1p(t[i]));
        v.push_back(std::log(y[i]));
        lo = std::min(lo, 1.0 + t[i]);
        hi = std::max(hi, 1.0 + t[i]);
    }
    if (hi < 10.0 * lo) throw std::invalid_argument("algebraic fit needs samples spanning a decade in 1 + t");
    const auto [alpha, beta] = line_fit(x, v);
    DecayFit fit{-beta, std::exp(alpha), 0.0};
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double model = fit.constant * std::pow(1.0 + t[i], -fit.exponent);
        fit.max_relative_residual = std::max(fit.max_relative_residual, std::abs(y[i] - model) / model);
    }
    return fit;
}

DecayFit fit_exponential(std::span<const double> t, std::span<const double> y, double mean) {
    require_sizes(t, y, 3);
    std::vector<double> x(t.begin(), t.end()), v;
    for (double yi : y) {
        if (!(yi - mean > 0.0)) throw std::invalid_argument("exponential fit needs values above the mean");
        v.push_back(std::log(yi - mean));
    }
    const auto [alpha, beta] = line_fit(x, v);
    DecayFit fit{-beta, std::exp(alpha), 0.0};
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double model = fit.constant * std::exp(-fit.exponent * t[i]) + mean;
        fit.max_relative_residual = std::max(fit.max_relative_residual, std::abs(y[i] - model) / std::abs(model));
    }
    return fit;
}

}  // namespace nlp::diagnostics
