#pragma once

#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "nlp/models/nonlinear.hpp"
#include "nlp/solver/stepper.hpp"
#include "nlp/spectral/field.hpp"

namespace nlp::solver {

struct SolverConfig {
    double dt = 1e-3;
    double t_end = 0.1;
    Scheme scheme = Scheme::etd2rk;
    // Snapshot (and observer call) every this many steps; t = 0 and the final
    // state are always emitted.
    int snapshot_every = 10;
    // Picard mode: iteration cap and sup-norm tolerance between iterates.
    int picard_cap = 60;
    double picard_tol = 1e-12;
    double overflow_guard = 1e280;
    // Optional extra truncation of the dealias band (|k_i| <= cutoff).
    std::optional<int> dealias_cutoff;
    // Keep every emitted snapshot in the trajectory (memory heavy on fine grids).
    bool keep_snapshots = true;

    bool operator==(const SolverConfig&) const = default;
};

// Throws std::invalid_argument describing the first violated constraint.
void validate(const SolverConfig& cfg);

enum class RunStatus { completed, overflow_detected, picard_diverged };
std::string_view to_string(RunStatus s);

struct TimedField {
    double time;
    spectral::SpectralField field;
};

struct Trajectory {
    std::vector<TimedField> snapshots;
    RunStatus status = RunStatus::completed;
    // Time reached: t_end, or the step at which the guard tripped.
    double final_time = 0.0;
    // max |u_hat| at final_time; infinite when the state went non-finite.
    double max_coeff = 0.0;
    std::size_t steps = 0;
    // Last state whose coefficients were all finite.
    std::optional<TimedField> last_finite;
};

using Observer = std::function<void(double time, const spectral::SpectralField& u)>;

// Integrates from u0 to cfg.t_end. Stops with overflow_detected as soon as a
// coefficient exceeds the guard or turns non-finite. Picard configs are
// integrated as a single Picard solve over [0, t_end].
Trajectory run(const models::SystemSpec& spec, const spectral::SpectralField& u0, const SolverConfig& cfg,
               const Observer& observer = {});

}  // namespace nlp::solver
