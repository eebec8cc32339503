#include "nlp/app/commands.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "nlp/app/config.hpp"
#include "nlp/app/output.hpp"
#include "nlp/certificate/report.hpp"
#include "nlp/models/chandrasekhar.hpp"
#include "nlp/oracle/lemma_quadrature.hpp"
#include "nlp/oracle/picard_direct.hpp"

namespace nlp::app {
namespace fs = std::filesystem;

namespace {

constexpr double kOracleTolerance = 1e-6;
constexpr double kKernelDrift = 0.02;
constexpr double kDuhamelDrift = 0.05;
constexpr double kStationaryResidual = 1e-12;

std::optional<double> parse_double(std::string_view s) {
    double v = 0.0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
    return v;
}

std::string snapshot_name(std::size_t index) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "snap_%06zu.nlpf", index);
    return buf;
}

}  // namespace

int simulate(const fs::path& config, const std::optional<fs::path>& out, std::ostream& log, std::ostream& err) {
    RunConfig cfg;
    models::SystemSpec spec;
    std::optional<spectral::SpectralField> u0;
    try {
        cfg = load_config(config);
        spec = build_system(cfg);
        u0 = models::realize(cfg.initial, build_grid(cfg), cfg.model.species);
    } catch (const std::exception& e) {
        err << "config error: " << e.what() << '\n';
        return exit_code::config;
    }
    const fs::path dir = out.value_or(fs::path(cfg.output_dir));
    try {
        fs::create_directories(dir / "snapshots");
        write_json_atomic(dir / "config.json", to_json(cfg));

        const auto& diag = cfg.diagnostics;
        std::string csv = diagnostics::csv_header(diag.norms, cfg.model.species) + "\n";
        std::size_t calls = 0, written = 0;
        double last_time = 0.0;
        bool last_in_csv = false, last_on_disk = false;
        std::optional<spectral::SpectralField> last;
        auto solver_cfg = cfg.solver;
        solver_cfg.keep_snapshots = false;

        const auto start = std::chrono::steady_clock::now();
        const auto traj = solver::run(spec, *u0, solver_cfg, [&](double t, const spectral::SpectralField& u) {
            last_in_csv = calls % diag.norms_every == 0;
            if (last_in_csv) csv += diagnostics::csv_row(diagnostics::compute_report(t, u, diag.norms)) + "\n";
            const bool snap = diag.snapshots_every > 0 ? calls % diag.snapshots_every == 0 : calls == 0;
            last_on_disk = snap;
            if (snap) write_snapshot_atomic(dir / "snapshots" / snapshot_name(written++), u, t);
            last_time = t;
            last = u;
            ++calls;
        });
        const double wallclock = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (last && !last_in_csv)
            csv += diagnostics::csv_row(diagnostics::compute_report(last_time, *last, diag.norms)) + "\n";
        if (last && !last_on_disk) write_snapshot_atomic(dir / "snapshots" / snapshot_name(written++), *last, last_time);

        write_text_atomic(dir / "norms.csv", csv);
        nlohmann::ordered_json summary = {{"status", std::string(solver::to_string(traj.status))},
                                          {"final_time", traj.final_time},
                                          {"max_coeff", traj.max_coeff},
                                          {"steps", traj.steps},
                                          {"snapshots", written},
                                          {"wallclock", wallclock}};
        write_json_atomic(dir / "run_summary.json", summary);
        log << "status " << solver::to_string(traj.status) << " at t = " << traj.final_time << ", max |u_hat| "
            << traj.max_coeff << '\n';
        return traj.status == solver::RunStatus::completed ? exit_code::ok : exit_code::overflow;
    } catch (const std::exception& e) {
        err << "output error: " << e.what() << '\n';
        return exit_code::config;
    }
}

int certify(const CertifyArgs& args, std::ostream& log, std::ostream& err) {
    certificate::CertifyOptions opts;
    try {
        opts.d = args.dim;
        opts.k_max = args.kmax;
        opts.a = args.a;
        opts.mode = certificate::parse_mode(args.mode);
        if (opts.mode == certificate::Mode::recursion_only && (args.kmax < 3 || args.kmax > 40))
            throw std::invalid_argument("recursion_only needs 3 <= kmax <= 40");
        if (opts.mode == certificate::Mode::solver_coupled && (args.kmax < 0 || args.kmax > 3))
            throw std::invalid_argument("solver_coupled needs 0 <= kmax <= 3");
        if (args.A != "auto") {
            std::string_view a = args.A;
            if (a.ends_with("A*")) {
                a.remove_suffix(2);
                if (a.ends_with('*')) a.remove_suffix(1);
                const auto m = a.empty() ? std::optional<double>(1.0) : parse_double(a);
                if (!m || !(*m > 0.0)) throw std::invalid_argument("cannot parse --A " + args.A);
                opts.a_star_multiple = *m;
            } else {
                const auto v = parse_double(a);
                if (!v || !(*v > 0.0)) throw std::invalid_argument("cannot parse --A " + args.A);
                opts.A = *v;
            }
        }
    } catch (const std::exception& e) {
        err << "argument error: " << e.what() << '\n';
        return exit_code::config;
    }
    try {
        const auto rep = certificate::certify(opts);
        if (!args.out.parent_path().empty()) fs::create_directories(args.out.parent_path());
        write_json_atomic(args.out, certificate::to_json(rep));
        log << "A* = " << rep.threshold.a_star << " (closed form " << rep.threshold.a_closed_form << ", ratio "
            << rep.threshold.a_star / rep.threshold.a_closed_form << "), A = " << rep.A << ", "
            << (rep.pass ? "pass" : "fail") << '\n';
        return rep.pass ? exit_code::ok : exit_code::certificate;
    } catch (const std::invalid_argument& e) {
        err << "argument error: " << e.what() << '\n';
        return exit_code::config;
    } catch (const std::exception& e) {
        err << "certificate error: " << e.what() << '\n';
        return exit_code::certificate;
    }
}

int lemmas(const LemmasArgs& args, std::ostream& log, std::ostream& err) {
    if (args.out.empty() || args.panels < 1) {
        err << "argument error: --out is required and panels must be positive\n";
        return exit_code::config;
    }
    std::string csv;
    bool ok = true;
    try {
        if (args.which == "k_decay") {
            const auto study = oracle::kernel_refinement_study([](double s) { return 1.0 / ((1.0 + s) * (1.0 + s)); },
                                                               args.panels);
            csv = oracle::to_csv(study);
            ok = study.change < kKernelDrift;
            log << "kernel ratio " << study.fine.ratio << " (mesh change " << study.change << ")\n";
        } else if (args.which == "duhamel") {
            const oracle::SpaceTimeProfile w{[](double s) { return std::pow(1.0 + s, -3.0); },
                                             [](double t) { return std::pow(1.0 + t, -1.5); }};
            const auto study = oracle::duhamel_refinement_study(w, args.panels);
            csv = oracle::to_csv(study);
            ok = study.space_change < kDuhamelDrift && study.time_change < kDuhamelDrift;
            log << "Duhamel envelope ratios " << study.fine.space_ratio << ", " << study.fine.time_ratio
                << " (mesh changes " << study.space_change << ", " << study.time_change << ")\n";
        } else if (args.which == "chandrasekhar") {
            std::vector<double> radii;
            for (double r = 0.5; r <= 64.0; r *= 1.25) radii.push_back(r);
            std::ostringstream os;
            os.precision(17);
            os << "d,radius,laplacian,transport,residual,relative_residual\n";
            double worst = 0.0;
            for (const auto& t : models::chandrasekhar_residual(args.dim, radii)) {
                os << args.dim << ',' << t.radius << ',' << t.laplacian << ',' << t.transport << ',' << t.residual
                   << ',' << t.residual / std::abs(t.laplacian) << '\n';
                worst = std::max(worst, t.residual);
            }
            csv = os.str();
            ok = worst <= kStationaryResidual;
            log << "max stationarity residual " << worst << '\n';
        } else {
            err << "argument error: --which must be k_decay, duhamel or chandrasekhar\n";
            return exit_code::config;
        }
    } catch (const oracle::QuadratureError& e) {
        err << "quadrature failed: " << e.what() << '\n';
        return exit_code::certificate;
    } catch (const std::invalid_argument& e) {
        err << "argument error: " << e.what() << '\n';
        return exit_code::config;
    }
    try {
        if (!args.out.parent_path().empty()) fs::create_directories(args.out.parent_path());
        write_text_atomic(args.out, csv);
    } catch (const std::exception& e) {
        err << "output error: " << e.what() << '\n';
        return exit_code::config;
    }
    if (!ok) err << "lemma check failed: see " << args.out.string() << '\n';
    return ok ? exit_code::ok : exit_code::certificate;
}

int compare_oracle(const fs::path& config, std::ostream& log, std::ostream& err) {
    RunConfig cfg;
    oracle::Comparison cmp;
    try {
        cfg = load_config(config);
        if (!cfg.oracle) throw ConfigError("config has no oracle section");
        oracle::ComparisonOptions o;
        o.solver_cutoff = cfg.oracle->cutoff;
        o.oracle_cutoff = cfg.oracle->oracle_cutoff;
        o.T = cfg.solver.t_end;
        o.dt = cfg.solver.dt;
        o.scheme = cfg.solver.scheme;
        o.oracle_steps = cfg.oracle->steps;
        o.checkpoints = cfg.oracle->checkpoints;
        const auto u0 = models::realize(cfg.initial, build_grid(cfg), cfg.model.species);
        cmp = oracle::compare_with_solver(build_system(cfg), u0, o);
    } catch (const std::exception& e) {
        err << "config error: " << e.what() << '\n';
        return exit_code::config;
    }
    const bool healthy = cmp.solver_status == solver::RunStatus::completed &&
                         cmp.oracle_status == oracle::DirectStatus::converged && cmp.checkpoints > 0;
    log << "max sup discrepancy " << cmp.discrepancy << " at t = " << cmp.worst_time << " over " << cmp.checkpoints
        << " checkpoints (data scale " << cmp.data_scale << ")\n";
    if (!healthy) err << "solver or oracle did not complete\n";
    return healthy && cmp.discrepancy <= kOracleTolerance ? exit_code::ok : exit_code::oracle;
}

}  // namespace nlp::app
