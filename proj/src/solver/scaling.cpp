#include "nlp/solver/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace nlp::solver {

using spectral::SpectralField;

ScalingReport scaling_covariance_check(const models::SystemSpec& spec, const SpectralField& u0, double lambda,
                                       const SolverConfig& cfg) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw std::invalid_argument("lambda must be positive");
    const auto& g = u0.grid();
    const spectral::TorusGrid scaled_grid(g.dim(), g.points_per_axis(), g.period() / lambda);
    const double amp = lambda * lambda;

    auto phys = spectral::inverse_transform(u0);
    for (auto& z : phys.data()) z *= amp;
    auto moved = spectral::physical_from_samples(scaled_grid, u0.species(), phys.data());
    const SpectralField v0 = spectral::forward_transform(moved);

    SolverConfig first = cfg;
    first.keep_snapshots = true;
    SolverConfig second = first;
    second.dt = cfg.dt / amp;
    second.t_end = cfg.t_end / amp;

    const auto a = run(spec, u0, first);
    const auto b = run(spec, v0, second);
    ScalingReport rep;
    const std::size_t count = std::min(a.snapshots.size(), b.snapshots.size());
    for (std::size_t s = 0; s < count; ++s) {
        const auto pa = spectral::inverse_transform(a.snapshots[s].field);
        const auto pb = spectral::inverse_transform(b.snapshots[s].field);
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < pa.data().size(); ++i) {
            const auto ref = amp * pa.data()[i];
            num = std::max(num, std::abs(ref - pb.data()[i]));
            den = std::max(den, std::abs(ref));
        }
        rep.max_relative_error = std::max(rep.max_relative_error, den > 0.0 ? num / den : num);
        ++rep.compared_snapshots;
    }
    if (a.status != RunStatus::completed || b.status != RunStatus::completed || a.snapshots.size() != b.snapshots.size())
        rep.max_relative_error = std::numeric_limits<double>::infinity();
    return rep;
}

}  // namespace nlp::solver
