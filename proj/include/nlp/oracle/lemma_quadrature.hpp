#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nlp::oracle {

struct QuadratureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using RadialProfile = std::function<double(double)>;

// sup_r (1 + r)^theta |f(r)| sampled on a dense logarithmic grid in [0, 1e6].
double weighted_sup(const RadialProfile& f, double theta);

// K = grad E_3 = x / (4 pi |x|^3) against a radial f, evaluated at x = r e_3.
struct KernelSample {
    double r = 0.0;
    double value = 0.0;      // e_3 component of K * f (the only nonzero one)
    double shell = 0.0;      // r^{-2} int_0^r f(s) s^2 ds
    double weighted = 0.0;   // (1 + r) |value|
    double partial[3] = {};  // |K| * |f| over |y| <= r/2, r/2 <= |y| <= 3r/2, |y| >= 3r/2
};

struct KernelTable {
    int panels = 0;
    std::vector<KernelSample> samples;
    double sup_weighted = 0.0;
    double f_norm = 0.0;  // ||f||_{L^inf_alpha}
    double ratio = 0.0;   // sup_weighted / f_norm, 0 for f = 0
};

// Radial integrals use Gauss-Legendre panels (panels per region), angular
// integrals adaptive tanh-sinh. Samples r in {1, 2, 4, ..., 64}.
// Throws std::invalid_argument unless d = 3 and alpha = 2; QuadratureError
// when an integral does not converge.
KernelTable kernel_convolution_quadrature(const RadialProfile& f, int d = 3, double alpha = 2.0, int panels = 8);

// G = d/dx_1 of the heat kernel; w(x, t) = rho(|x|) theta(t).
struct SpaceTimeProfile {
    RadialProfile spatial;
    std::function<double(double)> temporal;
};

struct DuhamelSample {
    double r = 0.0;
    double t = 0.0;
    double value = 0.0;  // L(w)(r e_1, t)
    double space_envelope = 0.0;  // (1 + r)^alpha |value|
    double time_envelope = 0.0;   // (1 + t)^{alpha/2} |value|
};

struct DuhamelTable {
    int panels = 0;
    std::vector<DuhamelSample> samples;
    double sup_space = 0.0;
    double sup_time = 0.0;
    double w_norm = 0.0;  // ||w||_{E_{alpha+1}}: larger of the two envelope sups
    double space_ratio = 0.0;
    double time_ratio = 0.0;
};

// Samples (r, t) in {1, 2, ..., 32}^2 (powers of two). The heat convolution
// of the radial profile uses the shifted variable s = r + 2 sqrt(tau) z and
// the time integral tau = sigma^2. The sigma integral runs on Gauss-Legendre
// panels (the mesh), the z integrals are adaptive Gauss-Kronrod.
DuhamelTable duhamel_operator_quadrature(const SpaceTimeProfile& w, int d = 3, double alpha = 2.0, int panels = 8);

// ||d_1 g_t||_{L^1(R^d)} by quadrature of the product of 1-D integrals.
double heat_derivative_l1_norm(double t, int d);

struct KernelStudy {
    KernelTable coarse, fine;
    double change = 0.0;  // |ratio_fine / ratio_coarse - 1|
};
struct DuhamelStudy {
    DuhamelTable coarse, fine;
    double space_change = 0.0;
    double time_change = 0.0;
};

// Runs at panels and 2 * panels.
KernelStudy kernel_refinement_study(const RadialProfile& f, int panels = 8);
DuhamelStudy duhamel_refinement_study(const SpaceTimeProfile& w, int panels = 8);

std::string to_csv(const KernelStudy& study);
std::string to_csv(const DuhamelStudy& study);

}  // namespace nlp::oracle
