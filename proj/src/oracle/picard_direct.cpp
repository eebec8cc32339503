#include "nlp/oracle/picard_direct.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "nlp/parallel.hpp"

namespace nlp::oracle {

SmallLattice::SmallLattice(int d, int R, double period, int species)
    : d_(d), R_(R), period_(period), species_(species), modes_(1) {
    if (d < 1 || d > 3) throw std::invalid_argument("lattice dimension must be 1, 2 or 3");
    if (R < 0) throw std::invalid_argument("lattice cutoff must be nonnegative");
    if (!(period > 0.0) || !std::isfinite(period)) throw std::invalid_argument("period must be positive");
    if (species < 1) throw std::invalid_argument("species count must be positive");
    for (int a = 0; a < d; ++a) {
        modes_ *= static_cast<std::size_t>(2 * R + 1);
        if (modes_ > kDeskBound) throw std::invalid_argument("(2R+1)^d exceeds the desk bound 1e5");
    }
    amplitudes_.assign(modes_ * species, cplx{});
}

std::array<int, 3> SmallLattice::wavenumbers(std::size_t mode) const {
    std::array<int, 3> k{0, 0, 0};
    const std::size_t side = 2 * R_ + 1;
    for (int a = d_ - 1; a >= 0; --a) {
        k[a] = static_cast<int>(mode % side) - R_;
        mode /= side;
    }
    return k;
}

bool SmallLattice::contains(const std::array<int, 3>& k) const {
    for (int a = 0; a < d_; ++a)
        if (std::abs(k[a]) > R_) return false;
    return true;
}

std::size_t SmallLattice::index(const std::array<int, 3>& k) const {
    std::size_t flat = 0;
    for (int a = 0; a < d_; ++a) flat = flat * (2 * R_ + 1) + static_cast<std::size_t>(k[a] + R_);
    return flat;
}

SmallLattice restrict_to_lattice(const spectral::SpectralField& u, int R) {
    const auto& g = u.grid();
    if (R >= g.points_per_axis() / 2) throw std::invalid_argument("lattice cutoff must stay below n/2");
    SmallLattice out(g.dim(), R, g.period(), u.species());
    for (int j = 0; j < u.species(); ++j)
        for (std::size_t m = 0; m < out.modes(); ++m) {
            const auto k = out.wavenumbers(m);
            out.at(j, m) = u.at(j, g.mode_index({k[0], k[1], k[2]}));
        }
    return out;
}

spectral::SpectralField embed(const SmallLattice& u, const spectral::TorusGrid& grid) {
    if (grid.dim() != u.dim()) throw std::invalid_argument("embedding dimension mismatch");
    if (std::abs(grid.period() - u.period()) > 1e-12 * u.period())
        throw std::invalid_argument("embedding period mismatch");
    if (u.cutoff() >= grid.points_per_axis() / 2) throw std::invalid_argument("grid too small for the lattice");
    spectral::SpectralField out(grid, u.species());
    for (int j = 0; j < u.species(); ++j)
        for (std::size_t m = 0; m < u.modes(); ++m) {
            const auto k = u.wavenumbers(m);
            out.at(j, grid.mode_index({k[0], k[1], k[2]})) = u.at(j, m);
        }
    return out;
}

double max_abs(const SmallLattice& u) {
    double s = 0.0;
    for (const auto& z : u.amplitudes()) s = std::max(s, std::abs(z));
    return s;
}

double max_abs_difference(const SmallLattice& a, const SmallLattice& b) {
    if (a.dim() != b.dim() || a.cutoff() != b.cutoff() || a.species() != b.species())
        throw std::invalid_argument("lattice shapes differ");
    double s = 0.0;
    for (std::size_t i = 0; i < a.amplitudes().size(); ++i)
        s = std::max(s, std::abs(a.amplitudes()[i] - b.amplitudes()[i]));
    return s;
}

double hermitian_defect(const SmallLattice& u) {
    double s = 0.0;
    for (int j = 0; j < u.species(); ++j)
        for (std::size_t m = 0; m < u.modes(); ++m) {
            auto k = u.wavenumbers(m);
            for (int a = 0; a < u.dim(); ++a) k[a] = -k[a];
            s = std::max(s, std::abs(u.at(j, m) - std::conj(u.at(j, u.index(k)))));
        }
    return s;
}

SmallLattice direct_nonlinear(const models::SystemSpec& spec, const SmallLattice& u) {
    if (spec.has_spatial_coupling()) throw std::invalid_argument("direct oracle needs constant coupling");
    if (spec.d != u.dim() || spec.m != u.species()) throw std::invalid_argument("spec and lattice disagree");
    const int d = u.dim(), m = u.species();
    const std::size_t N = u.modes();
    const double kf = 2.0 * std::numbers::pi / u.period();
    const double w = std::pow(u.period(), -d);

    SmallLattice out(d, u.cutoff(), u.period(), m);
    parallel_for(N, [&](std::size_t xi_i) {
        const auto xi = u.wavenumbers(xi_i);
        std::vector<cplx> acc(static_cast<std::size_t>(m * m), cplx{});
        for (std::size_t eta_i = 0; eta_i < N; ++eta_i) {
            const auto eta = u.wavenumbers(eta_i);
            std::array<int, 3> diff{0, 0, 0};
            double dot = 0.0, eta2 = 0.0;
            for (int a = 0; a < d; ++a) {
                diff[a] = xi[a] - eta[a];
                dot += (kf * xi[a]) * (kf * eta[a]);
                eta2 += (kf * eta[a]) * (kf * eta[a]);
            }
            if (eta2 == 0.0 || !u.contains(diff)) continue;
            const std::size_t di = u.index(diff);
            const double factor = dot / eta2;
            for (int h = 0; h < m; ++h)
                for (int k = 0; k < m; ++k) acc[h * m + k] += factor * u.at(h, di) * u.at(k, eta_i);
        }
        for (int j = 0; j < m; ++j) {
            cplx s{};
            for (int h = 0; h < m; ++h)
                for (int k = 0; k < m; ++k) s += spec.c(j, h, k) * acc[h * m + k];
            out.at(j, xi_i) = w * s;
        }
    });
    return out;
}

DirectTrajectory picard_direct(const models::SystemSpec& spec, const SmallLattice& u0, double T, int steps,
                               double tol, int cap) {
    if (!(T > 0.0) || !std::isfinite(T)) throw std::invalid_argument("final time must be positive");
    if (steps < 1) throw std::invalid_argument("need at least one time step");
    if (!(tol > 0.0) || cap < 1) throw std::invalid_argument("bad Picard tolerance or cap");
    const double dt = T / steps;
    const double kf = 2.0 * std::numbers::pi / u0.period();
    std::vector<double> E(u0.modes());
    for (std::size_t i = 0; i < E.size(); ++i) {
        const auto k = u0.wavenumbers(i);
        double k2 = 0.0;
        for (int a = 0; a < u0.dim(); ++a) k2 += (kf * k[a]) * (kf * k[a]);
        E[i] = std::exp(-dt * k2);
    }

    DirectTrajectory traj;
    traj.times.push_back(0.0);
    traj.states.push_back(u0);
    auto N_prev = direct_nonlinear(spec, u0);
    for (int step = 1; step <= steps; ++step) {
        const auto& prev = traj.states.back();
        // Known part: E u_{i-1} + dt/2 E N_{i-1}.
        SmallLattice base = prev;
        for (int j = 0; j < prev.species(); ++j)
            for (std::size_t i = 0; i < prev.modes(); ++i)
                base.at(j, i) = E[i] * (prev.at(j, i) + 0.5 * dt * N_prev.at(j, i));
        SmallLattice cur = base;
        for (int j = 0; j < prev.species(); ++j)
            for (std::size_t i = 0; i < prev.modes(); ++i) cur.at(j, i) += 0.5 * dt * E[i] * N_prev.at(j, i);

        bool done = false;
        SmallLattice N_cur = direct_nonlinear(spec, cur);
        for (int it = 1; it <= cap && !done; ++it) {
            SmallLattice next = base;
            for (std::size_t i = 0; i < next.amplitudes().size(); ++i)
                next.amplitudes()[i] += 0.5 * dt * N_cur.amplitudes()[i];
            const double diff = max_abs_difference(next, cur);
            const double scale = std::max(1.0, max_abs(next));
            traj.max_iterations = std::max(traj.max_iterations, it);
            traj.last_difference = diff;
            cur = std::move(next);
            N_cur = direct_nonlinear(spec, cur);
            if (!std::isfinite(diff) || !std::isfinite(scale)) break;
            done = diff <= tol * scale;
        }
        if (!done) {
            traj.status = DirectStatus::diverged;
            traj.failed_node = static_cast<std::size_t>(step);
            return traj;
        }
        traj.times.push_back(step * dt);
        traj.states.push_back(std::move(cur));
        N_prev = std::move(N_cur);
    }
    return traj;
}

Comparison compare_with_solver(const models::SystemSpec& spec, const spectral::SpectralField& u0,
                               const ComparisonOptions& o) {
    if (o.checkpoints < 1 || o.oracle_steps % o.checkpoints != 0)
        throw std::invalid_argument("oracle steps must be a multiple of the checkpoint count");
    const double steps = o.T / o.dt;
    const long solver_steps = std::lround(steps);
    if (std::abs(steps - solver_steps) > 1e-9 * steps || solver_steps % o.checkpoints != 0)
        throw std::invalid_argument("T / dt must be an integer multiple of the checkpoint count");

    solver::SolverConfig cfg;
    cfg.dt = o.dt;
    cfg.t_end = o.T;
    cfg.scheme = o.scheme;
    cfg.snapshot_every = static_cast<int>(solver_steps / o.checkpoints);
    cfg.dealias_cutoff = o.solver_cutoff;
    const auto traj = solver::run(spec, u0, cfg);
    const auto direct =
        picard_direct(spec, restrict_to_lattice(u0, o.oracle_cutoff), o.T, o.oracle_steps);

    Comparison out;
    out.solver_status = traj.status;
    out.oracle_status = direct.status;
    out.data_scale = spectral::max_abs(u0);
    const int R = std::max(o.solver_cutoff, o.oracle_cutoff);
    const std::size_t stride = static_cast<std::size_t>(o.oracle_steps / o.checkpoints);
    for (const auto& snap : traj.snapshots) {
        const double node = snap.time / o.T * o.oracle_steps;
        const auto i = static_cast<std::size_t>(std::lround(node));
        if (std::abs(node - static_cast<double>(i)) > 1e-6 || i % stride != 0 || i >= direct.states.size()) continue;
        const auto oracle_state = restrict_to_lattice(embed(direct.states[i], u0.grid()), R);
        const double diff = max_abs_difference(restrict_to_lattice(snap.field, R), oracle_state);
        ++out.checkpoints;
        if (!(diff <= out.discrepancy)) {
            out.discrepancy = diff;
            out.worst_time = snap.time;
        }
    }
    if (out.checkpoints == 0) out.discrepancy = std::numeric_limits<double>::infinity();
    return out;
}

}  // namespace nlp::oracle
