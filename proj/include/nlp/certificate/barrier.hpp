#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "nlp/certificate/ladder.hpp"
#include "nlp/solver/run.hpp"
#include "nlp/spectral/field.hpp"

namespace nlp::certificate {

struct BarrierLevelResult {
    int k = 0;
    double t_k = 0.0;
    bool resolved = false;  // support inside the dealias band and fine enough
    std::string note;
    std::size_t snapshots = 0;
    std::size_t comparisons = 0;
    std::size_t out_of_range = 0;  // barrier beyond double range, not compared
    double min_ratio = 0.0;        // min u_hat / barrier over compared points
    double min_defect = 0.0;       // min (u_hat - barrier) / max|u_hat|
    bool passed = false;
};

// Pointwise check u_hat_t(xi) >= barrier_k(xi, t) - tol * max|u_hat_t| on the
// lattice points of supp m_k, for every observed time t >= t_k. The ladder
// must live on the solver's frequency lattice (build_fixed_lattice_ladder).
class BarrierMonitor {
public:
    BarrierMonitor(Ladder ladder, const spectral::TorusGrid& grid, double A, double tol = 1e-10);

    void observe(double t, const spectral::SpectralField& u);
    std::vector<BarrierLevelResult> results() const;
    const Ladder& ladder() const { return ladder_; }

private:
    struct Track {
        BarrierLevelResult result;
        std::vector<std::size_t> modes;  // solver flat index per support point
        std::vector<double> log_shape;   // ln m_k at the same points
    };
    Ladder ladder_;
    double log_A_;
    double tol_;
    std::vector<Track> tracks_;
};

// Shape of u0 / A on the solver lattice (real parts, positive cone only).
Shape lattice_shape(const spectral::SpectralField& u0, int species = 0);

std::vector<BarrierLevelResult> verify_solution_barrier(const std::vector<solver::TimedField>& snapshots,
                                                        Ladder ladder, double A, double tol = 1e-10);

// min over xi of (Re u_hat_t - e^{-t|xi|^2} Re u_hat_0) / max|u_hat_t|.
double heat_barrier_defect(const spectral::SpectralField& u_t, const spectral::SpectralField& u_0, double t);

// min over xi of Re u_hat / max|u_hat|; 0 for the zero field.
double positivity_defect(const spectral::SpectralField& u);

}  // namespace nlp::certificate
