#pragma once

#include "nlp/models/system.hpp"
#include "nlp/solver/run.hpp"

namespace nlp::solver {

struct ScalingReport {
    double max_relative_error = 0.0;
    std::size_t compared_snapshots = 0;
};

// Runs (period L, u0, horizon cfg.t_end) and (period L/lambda,
// lambda^2 u0(lambda x), horizon cfg.t_end/lambda^2) at the same n, then
// compares lambda^2 u(lambda x, lambda^2 s) with the second run at matched
// snapshots. Physical grid points map onto each other exactly. Returns the
// largest sup discrepancy relative to the sup of the rescaled first run.
// Throws std::invalid_argument for lambda <= 0.
ScalingReport scaling_covariance_check(const models::SystemSpec& spec, const spectral::SpectralField& u0,
                                       double lambda, const SolverConfig& cfg);

}  // namespace nlp::solver
