#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "nlp/models/nonlinear.hpp"
#include "nlp/solver/run.hpp"

namespace nlp::solver {

struct PicardResult {
    std::vector<double> times;                    // t_i = i T / steps
    std::vector<spectral::SpectralField> nodes;   // solution at t_i
    int iterations = 0;
    // Observed ratio of successive iterate differences (last two iterations).
    double contraction_ratio = 0.0;
    std::vector<double> differences;  // sup |u^{p+1} - u^p| per iteration
    RunStatus status = RunStatus::completed;
};

// Called after each iteration with the iterate index p >= 1 and the node values.
using PicardObserver = std::function<void(int iteration, std::span<const spectral::SpectralField> nodes)>;

// Fixed point of u = e^{t Lap} u0 + int_0^t e^{(t-s) Lap} N(u(s)) ds on the
// time lattice t_i. The integrand is interpolated linearly between nodes and
// integrated against the exact heat factor (exponential trapezoid). Starts
// from u^0(t) = e^{t Lap} u0 and stops once
// max_i sup |u^{p+1}(t_i) - u^p(t_i)| <= tol * max(1, max_i sup |u^{p+1}(t_i)|).
// Status picard_diverged when the cap is reached or the iterates leave
// floating range.
PicardResult picard_solve(const models::NonlinearOperator& op, const spectral::SpectralField& u0, double T, int steps,
                          double tol, int cap, const PicardObserver& observer = {});

PicardResult picard_solve(const models::SystemSpec& spec, const spectral::SpectralField& u0, double T, int steps,
                          double tol, int cap, std::optional<int> dealias_cutoff = std::nullopt);

}  // namespace nlp::solver
