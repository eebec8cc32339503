#include "nlp/certificate/report.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "nlp/models/initial_data.hpp"
#include "nlp/solver/run.hpp"

namespace nlp::certificate {
namespace {

void validate(const CertifyOptions& o) {
    if (o.d < 2 || o.d > 3) throw std::invalid_argument("certificate dimension must be 2 or 3");
    if (o.A && !(*o.A > 0.0)) throw std::invalid_argument("amplitude A must be positive");
    if (!(o.a_star_multiple > 0.0)) throw std::invalid_argument("threshold multiple must be positive");
    if (!std::isfinite(o.a)) throw std::invalid_argument("Besov index must be finite");
    if (o.mode == Mode::recursion_only && o.k_max < 3)
        throw std::invalid_argument("recursion_only needs k_max >= 3");
    if (o.mode == Mode::solver_coupled) {
        if (o.k_max < 0) throw std::invalid_argument("k_max must be nonnegative");
        if (o.threshold_levels < 3) throw std::invalid_argument("threshold ladder needs at least 3 levels");
        if (!(o.solver.dt > 0.0)) throw std::invalid_argument("solver dt must be positive");
    }
}

bool ladder_consistent(const Ladder& ladder) {
    for (const auto& level : ladder.levels) {
        if (!level.verified) return false;
        if (std::abs(level.shape.mass() - 1.0) > 1e-12) return false;
        if (min_psi_on_support(level) < 1.0) return false;
        if (!std::isfinite(level.log_chain) || !std::isfinite(level.log_norm)) return false;
    }
    return true;
}

SolverRunSummary run_coupled(const CertifyOptions& o, double A, std::vector<BarrierLevelResult>& barrier) {
    const spectral::TorusGrid grid(o.d, o.solver.n, o.solver.period);
    const auto spec = models::build_preset(o.solver.preset, o.d, 1);
    const auto u0 = models::fourier_bump(grid, 1, A);
    BarrierMonitor monitor(build_fixed_lattice_ladder(lattice_shape(u0), o.k_max), grid, A);

    solver::SolverConfig cfg;
    cfg.dt = o.solver.dt;
    cfg.t_end = blowup_time();
    cfg.scheme = o.solver.scheme;
    cfg.snapshot_every = 1;
    cfg.keep_snapshots = false;
    cfg.overflow_guard = o.solver.overflow_guard;

    SolverRunSummary summary;
    summary.min_positivity = std::numeric_limits<double>::infinity();
    summary.min_heat_barrier = std::numeric_limits<double>::infinity();
    const auto traj = solver::run(spec, u0, cfg, [&](double t, const spectral::SpectralField& u) {
        if (!std::isfinite(max_abs(u))) return;
        monitor.observe(t, u);
        summary.min_positivity = std::min(summary.min_positivity, positivity_defect(u));
        summary.min_heat_barrier = std::min(summary.min_heat_barrier, heat_barrier_defect(u, u0, t));
    });
    summary.status = std::string(solver::to_string(traj.status));
    summary.final_time = traj.final_time;
    summary.max_coeff = traj.max_coeff;
    summary.overflow_before_blowup_time =
        traj.status == solver::RunStatus::overflow_detected && traj.final_time <= blowup_time();
    barrier = monitor.results();
    return summary;
}

nlohmann::ordered_json box_json(const SupportBox& b, int d) {
    nlohmann::ordered_json lo = nlohmann::ordered_json::array(), hi = nlohmann::ordered_json::array();
    for (int a = 0; a < d; ++a) {
        lo.push_back(b.lo[a]);
        hi.push_back(b.hi[a]);
    }
    return {{"lo", lo}, {"hi", hi}};
}

}  // namespace

std::string_view to_string(Mode m) { return m == Mode::recursion_only ? "recursion_only" : "solver_coupled"; }

Mode parse_mode(std::string_view name) {
    if (name == "recursion_only") return Mode::recursion_only;
    if (name == "solver_coupled") return Mode::solver_coupled;
    throw std::invalid_argument("unknown certificate mode '" + std::string(name) + "'");
}

CertificateReport certify(const CertifyOptions& opts) {
    validate(opts);
    CertificateReport rep;
    rep.d = opts.d;
    rep.k_max = opts.k_max;
    rep.mode = opts.mode;
    rep.a = opts.a;
    const int depth = opts.mode == Mode::recursion_only ? opts.k_max : opts.threshold_levels;
    rep.ladder = build_recursion_ladder(opts.d, depth);
    rep.ladder_ok = ladder_consistent(rep.ladder);

    const auto probe = estimate_threshold(rep.ladder, opts.a, {});
    rep.A = opts.A.value_or(opts.a_star_multiple * probe.a_star);
    const std::vector<double> table_A{0.5 * probe.a_star, probe.a_star, 2.0 * probe.a_star, probe.a_closed_form, rep.A};
    rep.threshold = estimate_threshold(rep.ladder, opts.a, table_A);
    rep.besov_terms = rep.threshold.table.back().log_terms;
    rep.diverges = rep.threshold.table.back().diverging;
    rep.pass = rep.ladder_ok && rep.diverges;

    if (opts.mode == Mode::solver_coupled) {
        rep.run = run_coupled(opts, rep.A, rep.barrier);
        rep.pass = rep.pass && rep.run->overflow_before_blowup_time;
        for (const auto& b : rep.barrier) rep.pass = rep.pass && b.passed;
    }
    return rep;
}

nlohmann::ordered_json to_json(const CertificateReport& r) {
    using json = nlohmann::ordered_json;
    const double log_A = std::log(r.A);
    json levels = json::array();
    for (const auto& l : r.ladder.levels)
        levels.push_back({{"k", l.k},
                          {"t_k", l.t_k},
                          {"logPrefactor", l.log_prefactor(log_A)},
                          {"margin", l.margin},
                          {"log_norm", l.log_norm},
                          {"log_gain", l.log_gain},
                          {"min_geometric_factor", l.min_geometric},
                          {"min_time_factor", l.min_time_factor},
                          {"min_psi_on_support", min_psi_on_support(l)},
                          {"support_box", box_json(l.support, r.d)}});
    json table = json::array();
    for (const auto& row : r.threshold.table)
        table.push_back({{"A", row.A}, {"log_terms", row.log_terms}, {"diverging", row.diverging},
                         {"vanishing", row.vanishing}});
    json out = {{"d", r.d},
                {"k_max", r.k_max},
                {"mode", std::string(to_string(r.mode))},
                {"A", r.A},
                {"a", r.a},
                {"levels", levels},
                {"A_star", r.threshold.a_star},
                {"A_closed_form", r.threshold.a_closed_form},
                {"A_star_over_A_closed_form", r.threshold.a_star / r.threshold.a_closed_form},
                {"A_over_A_star", r.A / r.threshold.a_star},
                {"level_exponents", r.threshold.exponents},
                {"level_thresholds", r.threshold.level_thresholds},
                {"divergence_table", table},
                {"besov_lowerbound", r.besov_terms}};
    if (r.run) {
        out["run"] = {{"status", r.run->status},
                      {"final_time", r.run->final_time},
                      {"max_coeff", r.run->max_coeff},
                      {"overflow_before_blowup_time", r.run->overflow_before_blowup_time},
                      {"min_positivity", r.run->min_positivity},
                      {"min_heat_barrier", r.run->min_heat_barrier}};
        json barrier = json::array();
        for (const auto& b : r.barrier)
            barrier.push_back({{"k", b.k},
                               {"t_k", b.t_k},
                               {"resolved", b.resolved},
                               {"snapshots", b.snapshots},
                               {"comparisons", b.comparisons},
                               {"out_of_range", b.out_of_range},
                               {"min_ratio", b.comparisons ? json(b.min_ratio) : json(nullptr)},
                               {"min_defect", b.comparisons ? json(b.min_defect) : json(nullptr)},
                               {"passed", b.passed},
                               {"note", b.note}});
        out["barrier"] = barrier;
    }
    out["ladder_ok"] = r.ladder_ok;
    out["diverges"] = r.diverges;
    out["pass"] = r.pass;
    return out;
}

}  // namespace nlp::certificate
