#include "nlp/certificate/barrier.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>

#include "nlp/spectral/multipliers.hpp"

namespace nlp::certificate {

BarrierMonitor::BarrierMonitor(Ladder ladder, const spectral::TorusGrid& grid, double A, double tol)
    : ladder_(std::move(ladder)), log_A_(std::log(A)), tol_(tol) {
    if (!(A > 0.0)) throw std::invalid_argument("barrier amplitude must be positive");
    const int n = grid.points_per_axis();
    const int band = n / 3;
    for (const auto& level : ladder_.levels) {
        Track tr;
        tr.result.k = level.k;
        tr.result.t_k = level.t_k;
        tr.result.min_ratio = std::numeric_limits<double>::infinity();
        tr.result.min_defect = std::numeric_limits<double>::infinity();
        const auto& m = level.shape;
        tr.result.resolved = std::abs(m.h - grid.frequency_spacing()) <= 1e-12 * m.h;
        if (!tr.result.resolved) tr.result.note = "ladder lattice differs from the solver lattice";
        if (tr.result.resolved && m.h > std::ldexp(1.0, level.k) / 16.0) {
            tr.result.resolved = false;
            tr.result.note = "lattice spacing coarser than 2^k / 16";
        }
        for (std::size_t i = 0; tr.result.resolved && i < m.size(); ++i) {
            if (!(m.values[i] > 0.0)) continue;
            const auto idx = m.unflatten(i);
            spectral::TorusGrid::Index w{0, 0, 0};
            bool inside = true;
            for (int a = 0; a < m.d; ++a) {
                w[a] = static_cast<int>(m.origin[a] + idx[a]);
                inside = inside && std::abs(w[a]) <= band;
            }
            if (!inside) {
                tr.result.resolved = false;
                tr.result.note = "support leaves the dealias band";
                break;
            }
            tr.modes.push_back(grid.mode_index(w));
            tr.log_shape.push_back(std::log(m.values[i]));
        }
        tracks_.push_back(std::move(tr));
    }
}

void BarrierMonitor::observe(double t, const spectral::SpectralField& u) {
    const double scale = max_abs(u);
    if (!std::isfinite(scale)) return;
    const double log_max = std::log(DBL_MAX);
    for (std::size_t l = 0; l < tracks_.size(); ++l) {
        auto& tr = tracks_[l];
        const auto& level = ladder_.levels[l];
        if (!tr.result.resolved || t < level.t_k) continue;
        ++tr.result.snapshots;
        const double lb = level.log_barrier(log_A_, t);
        for (std::size_t i = 0; i < tr.modes.size(); ++i) {
            const double log_b = lb + tr.log_shape[i];
            if (log_b > log_max) {
                ++tr.result.out_of_range;
                continue;
            }
            const double b = std::exp(log_b);
            const double v = u.at(0, tr.modes[i]).real();
            ++tr.result.comparisons;
            if (b > 0.0) tr.result.min_ratio = std::min(tr.result.min_ratio, v / b);
            if (scale > 0.0) tr.result.min_defect = std::min(tr.result.min_defect, (v - b) / scale);
        }
    }
}

std::vector<BarrierLevelResult> BarrierMonitor::results() const {
    std::vector<BarrierLevelResult> out;
    for (const auto& tr : tracks_) {
        auto r = tr.result;
        r.passed = r.resolved && r.comparisons > 0 && r.min_defect >= -tol_;
        if (r.resolved && r.snapshots == 0) r.note = "no snapshot at or after t_k";
        else if (r.resolved && r.comparisons == 0) r.note = "barrier beyond double range at every snapshot";
        out.push_back(std::move(r));
    }
    return out;
}

Shape lattice_shape(const spectral::SpectralField& u0, int species) {
    const auto& g = u0.grid();
    const int d = g.dim();
    const int n = g.points_per_axis();
    std::array<long, 3> lo{0, 0, 0}, hi{0, 0, 0};
    bool any = false;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (!(u0.at(species, i).real() > 0.0)) continue;
        const auto w = g.wavenumbers(i);
        for (int a = 0; a < d; ++a) {
            lo[a] = any ? std::min<long>(lo[a], w[a]) : w[a];
            hi[a] = any ? std::max<long>(hi[a], w[a]) : w[a];
        }
        any = true;
    }
    if (!any) throw std::invalid_argument("initial data has no positive Fourier coefficient");
    std::array<int, 3> extent{1, 1, 1};
    for (int a = 0; a < d; ++a) extent[a] = static_cast<int>(hi[a] - lo[a] + 1);
    Shape m(d, g.frequency_spacing(), lo, extent);
    for (std::size_t i = 0; i < m.size(); ++i) {
        const auto idx = m.unflatten(i);
        spectral::TorusGrid::Index w{0, 0, 0};
        for (int a = 0; a < d; ++a) w[a] = static_cast<int>(lo[a] + idx[a]);
        if (std::abs(w[0]) >= n / 2 || std::abs(w[1]) >= n / 2 || std::abs(w[2]) >= n / 2) continue;
        m.values[i] = std::max(0.0, u0.at(species, g.mode_index(w)).real());
    }
    return m;
}

std::vector<BarrierLevelResult> verify_solution_barrier(const std::vector<solver::TimedField>& snapshots,
                                                        Ladder ladder, double A, double tol) {
    if (snapshots.empty()) throw std::invalid_argument("no snapshots to check");
    BarrierMonitor monitor(std::move(ladder), snapshots.front().field.grid(), A, tol);
    for (const auto& s : snapshots) monitor.observe(s.time, s.field);
    return monitor.results();
}

double heat_barrier_defect(const spectral::SpectralField& u_t, const spectral::SpectralField& u_0, double t) {
    spectral::require_compatible(u_t, u_0);
    const auto k2 = spectral::frequency_squared(u_t.grid());
    const double scale = max_abs(u_t);
    if (!(scale > 0.0)) return 0.0;
    double worst = std::numeric_limits<double>::infinity();
    for (int j = 0; j < u_t.species(); ++j)
        for (std::size_t i = 0; i < k2.size(); ++i)
            worst = std::min(worst, (u_t.at(j, i).real() - std::exp(-t * k2[i]) * u_0.at(j, i).real()) / scale);
    return worst;
}

double positivity_defect(const spectral::SpectralField& u) {
    const double scale = max_abs(u);
    if (!(scale > 0.0)) return 0.0;
    double worst = std::numeric_limits<double>::infinity();
    for (const auto& c : u.data()) worst = std::min(worst, c.real() / scale);
    return worst;
}

}  // namespace nlp::certificate
