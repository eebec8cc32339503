#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "nlp/models/system.hpp"
#include "nlp/solver/run.hpp"
#include "nlp/spectral/field.hpp"

namespace nlp::oracle {

using spectral::cplx;

// Fourier modes with |k_i| <= R on the lattice (2 pi / period) Z^d.
// Modes are ordered lexicographically, axis 0 slowest; species-major storage.
class SmallLattice {
public:
    static constexpr std::size_t kDeskBound = 100000;

    // Throws std::invalid_argument for d outside [1, 3], R < 0, period <= 0,
    // species < 1 or (2R + 1)^d above the desk bound.
    SmallLattice(int d, int R, double period, int species);

    int dim() const { return d_; }
    int cutoff() const { return R_; }
    double period() const { return period_; }
    int species() const { return species_; }
    std::size_t modes() const { return modes_; }

    std::array<int, 3> wavenumbers(std::size_t mode) const;
    // Requires |k_i| <= R.
    std::size_t index(const std::array<int, 3>& k) const;
    bool contains(const std::array<int, 3>& k) const;

    cplx& at(int j, std::size_t mode) { return amplitudes_[j * modes_ + mode]; }
    const cplx& at(int j, std::size_t mode) const { return amplitudes_[j * modes_ + mode]; }
    std::vector<cplx>& amplitudes() { return amplitudes_; }
    const std::vector<cplx>& amplitudes() const { return amplitudes_; }

private:
    int d_, R_;
    double period_;
    int species_;
    std::size_t modes_;
    std::vector<cplx> amplitudes_;
};

// Copies the modes |k_i| <= R of u. Throws when R >= n/2.
SmallLattice restrict_to_lattice(const spectral::SpectralField& u, int R);
// Zero-padded embedding; throws on dimension, period or size mismatch.
spectral::SpectralField embed(const SmallLattice& u, const spectral::TorusGrid& grid);

double max_abs(const SmallLattice& u);
double max_abs_difference(const SmallLattice& a, const SmallLattice& b);
// max |u(k) - conj(u(-k))|.
double hermitian_defect(const SmallLattice& u);

// N_j(xi) = L^{-d} sum_{h,k} c_{jhk} sum_eta (xi.eta/|eta|^2) u_h(xi - eta) u_k(eta),
// pairs restricted to the lattice. O(N^2) per species pair.
// Throws for spatially varying coupling or a species/dimension mismatch.
SmallLattice direct_nonlinear(const models::SystemSpec& spec, const SmallLattice& u);

enum class DirectStatus { converged, diverged };

struct DirectTrajectory {
    std::vector<double> times;
    std::vector<SmallLattice> states;
    DirectStatus status = DirectStatus::converged;
    // Node at which the fixed point failed (diverged only).
    std::size_t failed_node = 0;
    int max_iterations = 0;
    double last_difference = 0.0;
};

// u_i = E u_{i-1} + (dt/2) (E N(u_{i-1}) + N(u_i)), E = e^{-dt |xi|^2}, solved
// per node by fixed-point iteration. Stops at the first node that does not
// converge within cap iterations or turns non-finite.
DirectTrajectory picard_direct(const models::SystemSpec& spec, const SmallLattice& u0, double T, int steps,
                               double tol = 1e-14, int cap = 200);

struct ComparisonOptions {
    int solver_cutoff = 8;  // dealias_cutoff handed to the spectral solver
    int oracle_cutoff = 8;  // R of the oracle lattice; differing values are a negative control
    double T = 0.05;
    double dt = 1e-4;
    solver::Scheme scheme = solver::Scheme::ifrk4;
    int oracle_steps = 500;
    int checkpoints = 10;
};

struct Comparison {
    // max over checkpoints and modes |u_solver - u_oracle| on the larger lattice.
    double discrepancy = 0.0;
    double worst_time = 0.0;
    double data_scale = 0.0;  // max |u0_hat|
    int checkpoints = 0;
    solver::RunStatus solver_status = solver::RunStatus::completed;
    DirectStatus oracle_status = DirectStatus::converged;
};

// Runs the spectral solver from u0 and picard_direct from u0 restricted to the
// oracle lattice, comparing at checkpoints where both have a state. Throws
// std::invalid_argument when the step counts do not align with the checkpoints.
Comparison compare_with_solver(const models::SystemSpec& spec, const spectral::SpectralField& u0,
                               const ComparisonOptions& opts);

}  // namespace nlp::oracle
