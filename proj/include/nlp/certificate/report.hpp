#pragma once

#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "nlp/certificate/barrier.hpp"
#include "nlp/certificate/threshold.hpp"
#include "nlp/models/system.hpp"
#include "nlp/solver/stepper.hpp"

namespace nlp::certificate {

enum class Mode { recursion_only, solver_coupled };
std::string_view to_string(Mode m);
Mode parse_mode(std::string_view name);

struct SolverCoupling {
    int n = 512;
    double period = 32.0 * std::numbers::pi;
    double dt = 1e-3;
    solver::Scheme scheme = solver::Scheme::ifrk4;
    models::Preset preset = models::Preset::gravitating;
    double overflow_guard = 1e280;

    bool operator==(const SolverCoupling&) const = default;
};

struct CertifyOptions {
    int d = 2;
    int k_max = 6;
    // Empty means a_star_multiple times the measured threshold.
    std::optional<double> A;
    double a_star_multiple = 2.0;
    double a = 0.0;
    Mode mode = Mode::recursion_only;
    // Depth of the recursion ladder used for the threshold in solver_coupled mode.
    int threshold_levels = 6;
    SolverCoupling solver;

    bool operator==(const CertifyOptions&) const = default;
};

struct SolverRunSummary {
    std::string status;
    double final_time = 0.0;
    double max_coeff = 0.0;
    bool overflow_before_blowup_time = false;
    double min_positivity = 0.0;
    double min_heat_barrier = 0.0;
};

struct CertificateReport {
    int d = 2;
    int k_max = 0;
    Mode mode = Mode::recursion_only;
    double A = 0.0;
    double a = 0.0;
    Ladder ladder;  // the recursion ladder
    ThresholdEstimate threshold;
    std::vector<double> besov_terms;  // log lower bounds at t* for A
    std::optional<SolverRunSummary> run;
    std::vector<BarrierLevelResult> barrier;
    bool ladder_ok = false;
    bool diverges = false;
    bool pass = false;
};

// Builds the ladder, estimates the threshold and, in solver_coupled mode,
// runs the solver from A times the bump with the barrier monitor attached.
// Throws std::invalid_argument for bad options.
CertificateReport certify(const CertifyOptions& opts);

nlohmann::ordered_json to_json(const CertificateReport& report);

}  // namespace nlp::certificate
