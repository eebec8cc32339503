#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "nlp/models/initial_data.hpp"
#include "nlp/models/system.hpp"
#include "nlp/solver/picard.hpp"
#include "nlp/solver/run.hpp"
#include "nlp/solver/scaling.hpp"
#include "nlp/solver/stepper.hpp"
#include "nlp/spectral/multipliers.hpp"

using namespace nlp;
using namespace nlp::solver;
using models::Preset;
using spectral::cplx;
using spectral::SpectralField;
using spectral::TorusGrid;

namespace {

constexpr double kPi = std::numbers::pi;

models::SystemSpec gravitating(int d = 2) { return models::build_preset(Preset::gravitating, d, 1); }

double physical_sup(const SpectralField& f) {
    double s = 0.0;
    for (auto z : spectral::inverse_transform(f).data()) s = std::max(s, std::abs(z));
    return s;
}

SpectralField evolve(const models::SystemSpec& spec, const SpectralField& u0, double dt, double T, Scheme s) {
    SolverConfig cfg;
    cfg.dt = dt;
    cfg.t_end = T;
    cfg.scheme = s;
    cfg.keep_snapshots = false;
    return run(spec, u0, cfg).last_finite->field;
}

double observed_order(Scheme s, double dt) {
    const TorusGrid g(2, 32, 2.0 * kPi);
    const auto u0 = models::random_hermitian(g, 1, 4, 17, 6.0);
    const auto spec = gravitating();
    const double T = 0.1;
    auto a = evolve(spec, u0, dt, T, s);
    auto b = evolve(spec, u0, dt / 2, T, s);
    auto c = evolve(spec, u0, dt / 4, T, s);
    return std::log2(spectral::max_abs_difference(a, b) / spectral::max_abs_difference(b, c));
}

}  // namespace

TEST_CASE("phi functions near zero and away from it") {
    CHECK(phi1(0.0) == 1.0);
    CHECK(phi2(0.0) == 0.5);
    for (double z : {-1e-8, -0.01, -0.049, -0.051, -0.3, -4.0, -50.0}) {
        CHECK(phi1(z) == doctest::Approx(std::expm1(z) / z).epsilon(1e-14));
        const long double zl = z;
        long double ref = (std::expm1(zl) - zl) / (zl * zl);
        if (std::abs(z) < 1.0) {
            long double term = 0.5L;
            ref = 0.5L;
            for (int k = 3; k < 40; ++k) ref += (term *= zl / k);
        }
        CHECK(std::abs(phi2(z) - static_cast<double>(ref)) <= 1e-13 * std::abs(static_cast<double>(ref)));
    }
}

TEST_CASE("zero field stays zero for every scheme") {
    const TorusGrid g(2, 16, 2.0 * kPi);
    SpectralField zero(g, 1);
    for (auto s : {Scheme::etd2rk, Scheme::ifrk4}) CHECK(max_abs(step(gravitating(), zero, 0.01, s)) == 0.0);
    SolverConfig cfg;
    cfg.scheme = Scheme::picard;
    cfg.t_end = 0.05;
    cfg.dt = 0.01;
    auto traj = run(gravitating(), zero, cfg);
    CHECK(traj.status == RunStatus::completed);
    CHECK(spectral::max_abs(traj.last_finite->field) == 0.0);
}

TEST_CASE("linear-only step is the exact heat propagator") {
    const TorusGrid g(2, 32, 2.0 * kPi);
    const auto spec = models::build_preset(Preset::general, 2, 1, std::vector<double>{0.0});
    const auto u0 = models::random_hermitian(g, 1, 10, 3, 1.0);
    auto exact = spectral::apply_multiplier(u0, spectral::heat_propagator(0.01));
    for (auto s : {Scheme::etd2rk, Scheme::ifrk4}) {
        auto one = step(spec, u0, 0.01, s);
        CHECK(spectral::max_abs_difference(one, exact) <= 1e-14 * spectral::max_abs(exact));
    }
}

TEST_CASE("coupling zero: every snapshot equals the heat flow") {
    const TorusGrid g(2, 32, 2.0 * kPi);
    const auto spec = models::build_preset(Preset::general, 2, 1, std::vector<double>{0.0});
    const auto u0 = models::random_hermitian(g, 1, 10, 4, 1.0);
    for (auto s : {Scheme::etd2rk, Scheme::ifrk4, Scheme::picard}) {
        SolverConfig cfg;
        cfg.dt = 0.003;
        cfg.t_end = 0.1;
        cfg.scheme = s;
        cfg.snapshot_every = 5;
        auto traj = run(spec, u0, cfg);
        REQUIRE(traj.status == RunStatus::completed);
        CHECK(traj.snapshots.back().time == 0.1);
        for (const auto& snap : traj.snapshots) {
            auto exact = spectral::apply_multiplier(u0, spectral::heat_propagator(snap.time));
            CHECK(spectral::max_abs_difference(snap.field, exact) <= 1e-12 * spectral::max_abs(u0));
        }
    }
}

TEST_CASE("self-convergence orders") {
    const double etd = observed_order(Scheme::etd2rk, 0.01);
    const double rk4 = observed_order(Scheme::ifrk4, 0.02);
    MESSAGE("etd2rk order " << etd << ", ifrk4 order " << rk4);
    CHECK(etd >= 1.9);
    CHECK(rk4 >= 3.7);
}

TEST_CASE("debye small data: completed, sup norm decreases, mass conserved") {
    const TorusGrid g(2, 64, 8.0 * kPi);
    const auto u0 = models::random_hermitian(g, 1, 12, 8, 0.2);
    SolverConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_end = 0.2;
    auto traj = run(models::build_preset(Preset::debye, 2, 1), u0, cfg);
    CHECK(traj.status == RunStatus::completed);
    CHECK(physical_sup(traj.last_finite->field) < physical_sup(u0));
    for (const auto& s : traj.snapshots) CHECK(s.field.at(0, 0) == u0.at(0, 0));
}

TEST_CASE("snapshot times are increasing and include the horizon") {
    const TorusGrid g(2, 16, 2.0 * kPi);
    const auto u0 = models::random_hermitian(g, 1, 4, 1, 0.1);
    SolverConfig cfg;
    cfg.dt = 0.003;
    cfg.t_end = 0.01;
    cfg.snapshot_every = 2;
    auto traj = run(gravitating(), u0, cfg);
    REQUIRE(traj.snapshots.size() == 3);  // 0, 0.006, then 0.01 after a shorter tail step
    for (std::size_t i = 1; i < traj.snapshots.size(); ++i)
        CHECK(traj.snapshots[i].time > traj.snapshots[i - 1].time);
    CHECK(traj.snapshots.back().time == 0.01);
    CHECK(traj.steps == 4);
}

TEST_CASE("overflow guard and non-finite detection") {
    const TorusGrid g(2, 64, 32.0 * kPi);
    const auto u0 = models::fourier_bump(g, 1, 3000.0);
    SolverConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_end = 0.2;
    cfg.overflow_guard = 2.0 * spectral::max_abs(u0);
    auto traj = run(gravitating(), u0, cfg);
    CHECK(traj.status == RunStatus::overflow_detected);
    CHECK(traj.final_time < 0.2);
    CHECK(traj.max_coeff > cfg.overflow_guard);
    REQUIRE(traj.last_finite);
    CHECK(traj.snapshots.back().time == traj.last_finite->time);

    auto poisoned = u0;
    poisoned.at(0, 5) = {std::numeric_limits<double>::infinity(), 0.0};
    auto bad = run(gravitating(), poisoned, SolverConfig{});
    CHECK(bad.status == RunStatus::overflow_detected);
    CHECK(bad.last_finite->time == 0.0);
    CHECK(std::isinf(bad.max_coeff));

    SolverConfig invalid;
    invalid.dt = -1.0;
    CHECK_THROWS_AS(run(gravitating(), u0, invalid), std::invalid_argument);
}

TEST_CASE("picard: zero data converges at once") {
    const TorusGrid g(2, 16, 2.0 * kPi);
    auto r = picard_solve(gravitating(), SpectralField(g, 1), 0.1, 10, 1e-12, 5);
    CHECK(r.status == RunStatus::completed);
    CHECK(r.iterations == 1);
}

TEST_CASE("picard: small data contracts and agrees with etd2rk") {
    const TorusGrid g(2, 32, 2.0 * kPi);
    const auto u0 = models::random_hermitian(g, 1, 6, 21, 0.5);
    auto r = picard_solve(gravitating(), u0, 0.05, 400, 1e-13, 60);
    REQUIRE(r.status == RunStatus::completed);
    CHECK(r.contraction_ratio < 1.0);
    auto ref = evolve(gravitating(), u0, 1.25e-4, 0.05, Scheme::etd2rk);
    CHECK(physical_sup(r.nodes.back()) > 0.0);
    double worst = 0.0;
    const auto a = spectral::inverse_transform(r.nodes.back());
    const auto b = spectral::inverse_transform(ref);
    for (std::size_t i = 0; i < g.size(); ++i) worst = std::max(worst, std::abs(a.at(0, i) - b.at(0, i)));
    CHECK(worst <= 1e-6);
}

TEST_CASE("picard diverges for bump data above threshold past t*") {
    const TorusGrid g(2, 128, 32.0 * kPi);
    const auto u0 = models::fourier_bump(g, 1, 3000.0);
    auto r = picard_solve(gravitating(), u0, 0.25, 100, 1e-12, 30);
    CHECK(r.status == RunStatus::picard_diverged);
    MESSAGE("Picard differences: first " << r.differences.front() << ", last " << r.differences.back());
}

TEST_CASE("positive-cone data: Fourier positivity, monotonicity and the heat lower barrier") {
    const TorusGrid g(2, 128, 32.0 * kPi);
    const double A = 400.0;
    const auto w0 = models::fourier_bump(g, 1, 1.0);
    auto u0 = w0;
    for (auto& z : u0.data()) z *= A;
    auto v0 = u0;
    for (auto& z : v0.data()) z *= 2.0;

    SolverConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_end = 0.1;
    cfg.snapshot_every = 5;
    double worst_pos = 0.0, worst_barrier = 0.0;
    run(gravitating(), u0, cfg, [&](double t, const SpectralField& u) {
        const double scale = spectral::max_abs(u);
        const auto heat = spectral::heat_symbol(g, t);
        for (std::size_t i = 0; i < g.size(); ++i) {
            worst_pos = std::min(worst_pos, u.at(0, i).real() / scale);
            const double barrier = A * heat[i] * w0.at(0, i).real();
            worst_barrier = std::min(worst_barrier, (u.at(0, i).real() - barrier) / scale);
        }
    });
    CHECK(worst_pos >= -1e-12);
    CHECK(worst_barrier >= -1e-10);

    const models::NonlinearOperator op(gravitating(), g);
    std::vector<std::vector<SpectralField>> iu, iv;
    auto keep = [](auto& store) {
        return [&store](int, std::span<const SpectralField> nodes) { store.emplace_back(nodes.begin(), nodes.end()); };
    };
    auto ru = picard_solve(op, u0, 0.05, 50, 1e-12, 12, keep(iu));
    auto rv = picard_solve(op, v0, 0.05, 50, 1e-12, 12, keep(iv));
    const std::size_t iters = std::min(iu.size(), iv.size());
    REQUIRE(iters >= 3);
    double worst_mono = 0.0, worst_iter_pos = 0.0;
    for (std::size_t p = 0; p < iters; ++p)
        for (std::size_t n = 0; n < iu[p].size(); ++n) {
            const double scale = spectral::max_abs(iv[p][n]);
            for (std::size_t i = 0; i < g.size(); ++i) {
                worst_mono = std::min(worst_mono, (iv[p][n].at(0, i).real() - iu[p][n].at(0, i).real()) / scale);
                worst_iter_pos = std::min(worst_iter_pos, iu[p][n].at(0, i).real() / scale);
            }
        }
    CHECK(worst_mono >= -1e-10);
    CHECK(worst_iter_pos >= -1e-12);
    (void)ru;
    (void)rv;
}

TEST_CASE("scaling covariance") {
    const TorusGrid g(2, 32, 4.0 * kPi);
    const auto u0 = models::random_hermitian(g, 1, 6, 33, 3.0);
    SolverConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_end = 0.05;
    cfg.snapshot_every = 10;
    const auto spec = gravitating();
    auto same = scaling_covariance_check(spec, u0, 1.0, cfg);
    CHECK(same.max_relative_error <= 1e-14);
    auto two = scaling_covariance_check(spec, u0, 2.0, cfg);
    CHECK(two.compared_snapshots == 6);
    CHECK(two.max_relative_error <= 1e-6);

    auto wavy = spec;
    models::modulate_coupling(wavy, 0.5, 0, g.period() / 2.0);
    auto broken = scaling_covariance_check(wavy, u0, 2.0, cfg);
    MESSAGE("covariance error: constant " << two.max_relative_error << ", modulated " << broken.max_relative_error);
    CHECK(broken.max_relative_error >= 1e-3);
    CHECK_THROWS_AS(scaling_covariance_check(spec, u0, 0.0, cfg), std::invalid_argument);
}
