#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "nlp/diagnostics/besov.hpp"
#include "nlp/diagnostics/decay_fit.hpp"
#include "nlp/diagnostics/norms.hpp"
#include "nlp/diagnostics/report.hpp"
#include "nlp/models/initial_data.hpp"
#include "nlp/simd/kernels.hpp"
#include "test_fields.hpp"

using namespace nlp::spectral;
using namespace nlp::diagnostics;
using nlp::test::random_band_limited;
using nlp::test::random_hermitian;

namespace {

constexpr double kPi = std::numbers::pi;

// Reference bump, written out independently of the library profile.
double reference_psi(double r) {
    auto step = [](double x) {
        auto f = [](double s) { return s > 0.0 ? std::exp(-1.0 / s) : 0.0; };
        return f(x) / (f(x) + f(1.0 - x));
    };
    if (r <= 1.0 / 3.0 || r >= 4.0 / 3.0) return 0.0;
    if (r < 0.5) return step((r - 1.0 / 3.0) * 6.0);
    if (r <= 1.0) return 1.0;
    return 1.0 - step((r - 1.0) * 3.0);
}

// Block k by explicit mode sum at every grid point: u(x) = L^{-d} sum_xi u_hat e^{i xi x}.
double direct_block(const SpectralField& f, int k, double a) {
    const auto& g = f.grid();
    const int d = g.dim();
    const double L = g.period();
    double best = 0.0;
    for (std::size_t p = 0; p < g.size(); ++p) {
        const auto x = physical_point(g, p);
        cplx acc{};
        for (std::size_t m = 0; m < g.size(); ++m) {
            const auto w = g.wavenumbers(m);
            double r2 = 0.0, phase = 0.0;
            for (int ax = 0; ax < d; ++ax) {
                const double xi = 2.0 * kPi * w[ax] / L;
                r2 += xi * xi;
                phase += xi * x[ax];
            }
            const double weight = std::pow(2.0, -d * k) * reference_psi(std::pow(2.0, -k) * std::sqrt(r2));
            if (weight != 0.0) acc += weight * f.at(0, m) * std::polar(1.0, phase);
        }
        best = std::max(best, std::abs(acc) / std::pow(L, d));
    }
    return std::pow(2.0, (a + d) * k) * best;
}

SpectralField single_mode(const TorusGrid& g, TorusGrid::Index k, cplx value) {
    SpectralField f(g, 1);
    f.at(0, g.mode_index(k)) = value;
    return f;
}

}  // namespace

TEST_CASE("psi_hat meets its three defining conditions on a dense radial sample") {
    const int samples = 10000;
    for (int i = 0; i <= samples; ++i) {
        const double r = 2.0 * i / samples;
        const double v = psi_hat(r);
        CHECK(v >= 0.0);
        if (r >= 0.5 && r <= 1.0) CHECK(v >= 1.0);
        if (r <= 1.0 / 3.0 || r >= 4.0 / 3.0) CHECK(v == 0.0);
        CHECK(v == doctest::Approx(reference_psi(r)).epsilon(1e-14));
    }
}

TEST_CASE("Besov blocks match the explicit mode-sum definition") {
    for (int d : {2, 3}) {
        const int n = d == 2 ? 32 : 8;
        const TorusGrid g(d, n, 4.0 * kPi);
        const auto f = random_hermitian(g, 1, n / 2 - 1, 11 + d);
        const BesovConfig cfg{0.5, -1, 2};
        const auto res = besov_norm(f, cfg);
        REQUIRE(res.blocks.size() == 4);
        double direct_norm = 0.0;
        for (const auto& b : res.blocks) {
            const double ref = direct_block(f, b.k, cfg.a);
            direct_norm = std::max(direct_norm, ref);
            CHECK(b.value == doctest::Approx(ref).epsilon(1e-10));
        }
        CHECK(res.norm == doctest::Approx(direct_norm).epsilon(1e-10));
    }
}

TEST_CASE("Besov examples") {
    const TorusGrid g(2, 16, 2.0 * kPi);
    SUBCASE("zero field") {
        const auto res = besov_norm(SpectralField(g, 1), BesovConfig{});
        CHECK(res.norm == 0.0);
        for (const auto& b : res.blocks) CHECK(b.value == 0.0);
    }
    SUBCASE("single mode at |xi| = 1") {
        const auto f = single_mode(g, {1, 0, 0}, 1.0);
        const auto res = besov_norm(f, BesovConfig{0.0, 0, 0});
        CHECK(res.norm == doctest::Approx(1.0 / (4.0 * kPi * kPi)).epsilon(1e-12));
        CHECK(res.norm == doctest::Approx(direct_block(f, 0, 0.0)).epsilon(1e-12));
    }
    SUBCASE("shell support") {
        // Every lattice mode with 1/2 <= |xi| <= 1 on a finer frequency lattice.
        const TorusGrid fine(2, 32, 8.0 * kPi);
        SpectralField h(fine, 1);
        const auto k2 = frequency_squared(fine);
        for (std::size_t i = 0; i < fine.size(); ++i)
            if (k2[i] >= 0.25 && k2[i] <= 1.0) h.at(0, i) = 1.0;
        const auto res = besov_norm(h, BesovConfig{0.0, -4, 4});
        for (const auto& b : res.blocks) {
            if (b.k < -1 || b.k > 1) CHECK(b.value == 0.0);
            else CHECK(b.value > 0.0);
        }
    }
    CHECK_THROWS_AS(besov_norm(SpectralField(g, 1), BesovConfig{0.0, 2, 1}), std::invalid_argument);
}

TEST_CASE("pm_norm examples and zero-mode exclusion") {
    const TorusGrid g(2, 16, 2.0 * kPi);
    CHECK(pm_norm(single_mode(g, {1, 0, 0}, 1.0), 2.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(pm_norm(single_mode(g, {0, 2, 0}, 1.0), -1.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(pm_norm(single_mode(g, {0, 0, 0}, 5.0), -1.0) == 0.0);
    CHECK(pm_norm(single_mode(g, {0, 0, 0}, 5.0), 0.0) == 0.0);
}

TEST_CASE("weighted sup norm examples") {
    const TorusGrid g(2, 64, 32.0);
    CHECK(weighted_sup_norm(SpectralField(g, 1), 2.0) == 0.0);

    const auto u0 = nlp::models::weighted_decay(g, 1, 1.0);
    const double w = weighted_sup_norm(u0, 2.0);
    CHECK(w >= 0.9);
    CHECK(w <= 1.0 + 1e-12);

    const auto phys = inverse_transform(random_hermitian(g, 1, 10, 3));
    CHECK(weighted_sup_norm(phys, 0.0) == nlp::simd::active().max_abs(phys.data()));
    CHECK_THROWS_AS(weighted_sup_norm(phys, -1.0), std::invalid_argument);
}

TEST_CASE("norms are absolutely homogeneous") {
    const TorusGrid g(2, 32, 10.0);
    const auto f = random_hermitian(g, 1, 12, 5);
    for (double lambda : {-3.5, 0.25, 7.0}) {
        SpectralField s(g, 1);
        for (std::size_t i = 0; i < g.size(); ++i) s.at(0, i) = lambda * f.at(0, i);
        const double al = std::abs(lambda);
        CHECK(pm_norm(s, 1.5) == doctest::Approx(al * pm_norm(f, 1.5)).epsilon(1e-13));
        CHECK(pm_norm(s, -0.5) == doctest::Approx(al * pm_norm(f, -0.5)).epsilon(1e-13));
        CHECK(weighted_sup_norm(s, 2.0) == doctest::Approx(al * weighted_sup_norm(f, 2.0)).epsilon(1e-13));
        CHECK(besov_norm(s, BesovConfig{}).norm ==
              doctest::Approx(al * besov_norm(f, BesovConfig{}).norm).epsilon(1e-13));
    }
}

TEST_CASE("PM to Besov embedding holds with the lattice constant") {
    const double a_prime = 1.0;
    const double continuum = embedding_constant(2, a_prime);
    MESSAGE("continuum embedding constant (d=2, a'=1): " << continuum);
    double previous_gap = std::numeric_limits<double>::infinity();
    for (double period : {8.0 * kPi, 16.0 * kPi, 32.0 * kPi}) {
        const int n = static_cast<int>(std::lround(period / kPi)) * 4;
        const TorusGrid g(2, n, period);
        const double bound = embedding_bound(g, a_prime, 0, 1);
        MESSAGE("L = " << period << ": lattice embedding constant " << bound);
        for (int seed = 1; seed <= 3; ++seed) {
            const auto f = random_band_limited(g, 1, n / 2 - 1, seed);
            const double ratio = besov_norm(f, BesovConfig{a_prime - 2, 0, 1}).norm / pm_norm(f, a_prime);
            CHECK(ratio <= bound * (1.0 + 1e-12));
        }
        const double gap = std::abs(bound - continuum);
        CHECK(gap <= previous_gap);
        previous_gap = gap;
    }
    CHECK(previous_gap <= 0.02 * continuum);
}

TEST_CASE("decay fits recover exact models") {
    std::vector<double> t, y, e;
    for (int i = 0; i < 40; ++i) {
        const double ti = std::pow(10.0, 2.0 * i / 39.0) - 1.0;
        t.push_back(ti);
        y.push_back(3.0 / (1.0 + ti));
        e.push_back(std::exp(-0.1 * ti) + 0.5);
    }
    const auto alg = fit_algebraic(t, y);
    CHECK(alg.exponent == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(alg.constant == doctest::Approx(3.0).epsilon(1e-6));
    CHECK(alg.max_relative_residual < 1e-10);

    std::vector<double> te, ye;
    for (int i = 0; i < 20; ++i) {
        te.push_back(0.25 * i);
        ye.push_back(std::exp(-te.back()));
    }
    const auto ex = fit_exponential(te, ye);
    CHECK(ex.exponent == doctest::Approx(1.0).epsilon(1e-6));
    const auto shifted = fit_exponential(t, e, 0.5);
    CHECK(shifted.exponent == doctest::Approx(0.1).epsilon(1e-6));

    const std::vector<double> short_t{0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    CHECK_THROWS_AS(fit_algebraic(short_t, short_t), std::invalid_argument);
    y[4] = -1.0;
    CHECK_THROWS_AS(fit_algebraic(t, y), std::invalid_argument);
}

TEST_CASE("norm report rows and overflow flag") {
    const TorusGrid g(2, 16, 2.0 * kPi);
    const NormSpec spec;
    auto f = single_mode(g, {1, 0, 0}, 2.0);
    f.at(0, 0) = 3.0;
    const auto rep = compute_report(0.5, f, spec);
    REQUIRE(rep.species.size() == 1);
    CHECK_FALSE(rep.overflow);
    CHECK(rep.max_coeff == 3.0);
    CHECK(rep.species[0].mass == cplx{3.0, 0.0});
    CHECK(rep.species[0].pm[0] == doctest::Approx(2.0));
    const auto header = csv_header(spec, 1);
    CHECK(header == "time,sup_0,linf_theta0_0,linf_theta2_0,pm_a0_0,besov_a0_0,mass_re_0,mass_im_0,max_coeff,overflow");
    const auto row = csv_row(rep);
    CHECK(std::count(row.begin(), row.end(), ',') == std::count(header.begin(), header.end(), ','));
    CHECK(row.substr(0, 4) == "0.5,");

    f.at(0, 3) = cplx{NAN, 0.0};
    const auto bad = compute_report(1.0, f, spec);
    CHECK(bad.overflow);
    CHECK(csv_row(bad).back() == '1');
}
