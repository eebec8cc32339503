#include "nlp/solver/picard.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "nlp/parallel.hpp"
#include "nlp/simd/kernels.hpp"
#include "nlp/spectral/multipliers.hpp"

namespace nlp::solver {

using spectral::SpectralField;

PicardResult picard_solve(const models::NonlinearOperator& op, const SpectralField& u0, double T, int steps,
                          double tol, int cap, const PicardObserver& observer) {
    if (!(T > 0.0) || !std::isfinite(T)) throw std::invalid_argument("Picard horizon must be positive");
    if (steps < 1) throw std::invalid_argument("Picard needs at least one time step");
    if (!(tol > 0.0)) throw std::invalid_argument("Picard tolerance must be positive");
    if (cap < 1) throw std::invalid_argument("Picard iteration cap must be >= 1");
    if (!(u0.grid() == op.grid()) || u0.species() != op.spec().m)
        throw std::invalid_argument("initial data does not match the operator");

    const auto& k = simd::active();
    const auto& grid = u0.grid();
    const double delta = T / steps;
    const auto k2 = spectral::frequency_squared(grid);
    std::vector<double> decay(grid.size()), wa(grid.size()), wb(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double z = -delta * k2[i];
        decay[i] = std::exp(z);
        wb[i] = delta * phi2(z);
        wa[i] = delta * phi1(z) - wb[i];
    }

    PicardResult res;
    std::vector<SpectralField> free;
    for (int i = 0; i <= steps; ++i) {
        const double t = i == steps ? T : i * delta;
        res.times.push_back(t);
        SpectralField f = u0;
        if (i > 0) spectral::apply_real_symbol(f, spectral::heat_symbol(grid, t));
        free.push_back(std::move(f));
    }
    res.nodes = free;

    std::vector<SpectralField> N(steps + 1, SpectralField(grid, u0.species()));
    double prev_diff = 0.0;
    for (int p = 1; p <= cap; ++p) {
        parallel_for(static_cast<std::size_t>(steps + 1), [&](std::size_t i) { N[i] = op(res.nodes[i]); });
        double diff = 0.0, scale = 0.0;
        bool finite = true;
        SpectralField B(grid, u0.species());
        SpectralField term(grid, u0.species());
        for (int i = 1; i <= steps; ++i) {
            spectral::apply_real_symbol(B, decay);
            term = N[i - 1];
            spectral::apply_real_symbol(term, wa);
            k.combine(B.data(), B.data(), 1.0, term.data());
            term = N[i];
            spectral::apply_real_symbol(term, wb);
            k.combine(B.data(), B.data(), 1.0, term.data());

            SpectralField next = free[i];
            k.combine(next.data(), next.data(), 1.0, B.data());
            finite = finite && k.all_finite(next.data());
            if (!finite) break;
            SpectralField delta_field = next;
            k.combine(delta_field.data(), delta_field.data(), -1.0, res.nodes[i].data());
            diff = std::max(diff, k.max_abs(delta_field.data()));
            scale = std::max(scale, k.max_abs(next.data()));
            res.nodes[i] = std::move(next);
        }
        res.iterations = p;
        if (!finite || diff > 1e280 || scale > 1e280) {
            res.differences.push_back(std::numeric_limits<double>::infinity());
            res.status = RunStatus::picard_diverged;
            return res;
        }
        res.differences.push_back(diff);
        if (p >= 2 && prev_diff > 0.0) res.contraction_ratio = diff / prev_diff;
        prev_diff = diff;
        if (observer) observer(p, res.nodes);
        if (diff <= tol * std::max(1.0, scale)) {
            res.status = RunStatus::completed;
            return res;
        }
    }
    res.status = RunStatus::picard_diverged;
    return res;
}

PicardResult picard_solve(const models::SystemSpec& spec, const SpectralField& u0, double T, int steps, double tol,
                          int cap, std::optional<int> dealias_cutoff) {
    const models::NonlinearOperator op(spec, u0.grid(), dealias_cutoff);
    return picard_solve(op, u0, T, steps, tol, cap);
}

}  // namespace nlp::solver
