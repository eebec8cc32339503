#include "nlp/solver/run.hpp"

#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>

#include "nlp/simd/kernels.hpp"
#include "nlp/solver/picard.hpp"

namespace nlp::solver {

using spectral::SpectralField;

void validate(const SolverConfig& cfg) {
    if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt)) throw std::invalid_argument("dt must be positive");
    if (!(cfg.t_end > 0.0) || !std::isfinite(cfg.t_end)) throw std::invalid_argument("t_end must be positive");
    if (cfg.snapshot_every < 1) throw std::invalid_argument("snapshot_every must be >= 1");
    if (cfg.picard_cap < 1) throw std::invalid_argument("picard_cap must be >= 1");
    if (!(cfg.picard_tol > 0.0)) throw std::invalid_argument("picard_tol must be positive");
    if (!(cfg.overflow_guard > 0.0)) throw std::invalid_argument("overflow_guard must be positive");
    if (cfg.dealias_cutoff && *cfg.dealias_cutoff < 0) throw std::invalid_argument("dealias_cutoff must be >= 0");
}

std::string_view to_string(RunStatus s) {
    switch (s) {
        case RunStatus::completed: return "completed";
        case RunStatus::overflow_detected: return "overflow_detected";
        case RunStatus::picard_diverged: return "picard_diverged";
    }
    return "completed";
}

namespace {

std::size_t step_count(const SolverConfig& cfg) {
    const double ratio = cfg.t_end / cfg.dt;
    const auto n = static_cast<std::size_t>(std::ceil(ratio - 1e-9));
    return std::max<std::size_t>(n, 1);
}

class Emitter {
public:
    Emitter(Trajectory& traj, const SolverConfig& cfg, const Observer& obs) : traj_(traj), cfg_(cfg), obs_(obs) {}

    void operator()(double t, const SpectralField& u) {
        if (last_time_ && *last_time_ == t) return;
        last_time_ = t;
        if (obs_) obs_(t, u);
        if (cfg_.keep_snapshots) traj_.snapshots.push_back({t, u});
    }

private:
    Trajectory& traj_;
    const SolverConfig& cfg_;
    const Observer& obs_;
    std::optional<double> last_time_;
};

Trajectory run_picard(const models::NonlinearOperator& op, const SpectralField& u0, const SolverConfig& cfg,
                      const Observer& observer) {
    Trajectory traj;
    Emitter emit(traj, cfg, observer);
    const std::size_t n = step_count(cfg);
    auto result = picard_solve(op, u0, cfg.t_end, static_cast<int>(n), cfg.picard_tol, cfg.picard_cap);
    traj.status = result.status;
    traj.steps = n;
    if (result.status != RunStatus::completed) {
        emit(0.0, u0);
        traj.final_time = 0.0;
        traj.max_coeff = simd::active().max_abs(u0.data());
        traj.last_finite = TimedField{0.0, u0};
        return traj;
    }
    for (std::size_t i = 0; i <= n; ++i)
        if (i % cfg.snapshot_every == 0 || i == n) emit(result.times[i], result.nodes[i]);
    traj.final_time = result.times.back();
    traj.max_coeff = simd::active().max_abs(result.nodes.back().data());
    traj.last_finite = TimedField{traj.final_time, result.nodes.back()};
    return traj;
}

}  // namespace

Trajectory run(const models::SystemSpec& spec, const SpectralField& u0, const SolverConfig& cfg,
               const Observer& observer) {
    validate(cfg);
    const models::NonlinearOperator op(spec, u0.grid(), cfg.dealias_cutoff);
    if (u0.species() != spec.m) throw std::invalid_argument("initial data species count differs from the system");
    if (cfg.scheme == Scheme::picard) return run_picard(op, u0, cfg, observer);

    const auto& k = simd::active();
    Trajectory traj;
    Emitter emit(traj, cfg, observer);
    const std::size_t n = step_count(cfg);
    const double last_dt = cfg.t_end - static_cast<double>(n - 1) * cfg.dt;
    const Stepper regular(op, cfg.dt, cfg.scheme);
    std::unique_ptr<Stepper> tail;
    if (std::abs(last_dt - cfg.dt) > 1e-12 * cfg.dt) tail = std::make_unique<Stepper>(op, last_dt, cfg.scheme);

    SpectralField u = u0;
    emit(0.0, u);
    double t = 0.0;
    double t_prev = 0.0;
    for (std::size_t s = 1; s <= n; ++s) {
        const Stepper& stepper = (s == n && tail) ? *tail : regular;
        SpectralField next = stepper.step(u);
        t = s == n ? cfg.t_end : static_cast<double>(s) * cfg.dt;
        traj.steps = s;
        const bool finite = k.all_finite(next.data());
        const double peak = finite ? k.max_abs(next.data()) : std::numeric_limits<double>::infinity();
        if (!finite || peak > cfg.overflow_guard) {
            traj.status = RunStatus::overflow_detected;
            traj.final_time = t;
            traj.max_coeff = peak;
            if (finite) {
                emit(t, next);
                traj.last_finite = TimedField{t, std::move(next)};
            } else {
                emit(t_prev, u);
                traj.last_finite = TimedField{t_prev, std::move(u)};
            }
            return traj;
        }
        u = std::move(next);
        t_prev = t;
        if (s % static_cast<std::size_t>(cfg.snapshot_every) == 0 || s == n) emit(t, u);
    }
    traj.final_time = t;
    traj.max_coeff = k.max_abs(u.data());
    traj.last_finite = TimedField{t, std::move(u)};
    return traj;
}

}  // namespace nlp::solver
