#pragma once

#include <span>

namespace nlp::diagnostics {

struct DecayFit {
    double exponent = 0.0;  // p for the algebraic model, lambda for the exponential one
    double constant = 0.0;  // C
    double max_relative_residual = 0.0;
};

// Least squares of log y = log C - p log(1 + t). Needs >= 10 samples with
// (1 + t_max) / (1 + t_min) >= 10. Throws std::invalid_argument otherwise or
// when some y <= 0.
DecayFit fit_algebraic(std::span<const double> t, std::span<const double> y);

// Least squares of log(y - mean) = log C - lambda t, i.e. y = C e^{-lambda t} + mean
// with the mean supplied. Needs >= 3 samples and y > mean.
DecayFit fit_exponential(std::span<const double> t, std::span<const double> y, double mean = 0.0);

}  // namespace nlp::diagnostics
