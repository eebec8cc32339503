#include "nlp/oracle/lemma_quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/sinh_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "nlp/parallel.hpp"

namespace nlp::oracle {
namespace {

using std::numbers::pi;
using Gauss = boost::math::quadrature::gauss<double, 8>;

constexpr double kTol = 1e-12;
constexpr double kAccept = 1e-8;

void require_leading_case(int d, double alpha) {
    if (d != 3 || alpha != 2.0) throw std::invalid_argument("lemma quadratures run at d = 3, alpha = 2 only");
}

template <class F>
double panels_integrate(F&& f, double a, double b, int panels) {
    const double h = (b - a) / panels;
    double s = 0.0;
    for (int p = 0; p < panels; ++p) s += Gauss::integrate(f, a + p * h, a + (p + 1) * h);
    return s;
}

// int_0^2 g(v) dv with v = 1 - mu, which keeps the peak at mu = 1 resolved.
template <class F>
double angular(F&& g) {
    thread_local boost::math::quadrature::tanh_sinh<double> ts;
    double err = 0.0, l1 = 0.0;
    double v;
    try {
        v = ts.integrate(g, 0.0, 2.0, kTol, &err, &l1);
    } catch (const std::exception& e) {
        throw QuadratureError(std::string("angular integral failed: ") + e.what());
    }
    if (!std::isfinite(v) || err > kAccept * std::max(l1, 1e-300)) throw QuadratureError("angular integral did not converge");
    return v;
}

// (1/2) int (r - s mu) / |r e - s omega|^3 dmu.
double signed_inner(double r, double s) {
    const double gap = (r - s) * (r - s);
    return 0.5 * angular([&](double v) { return (r - s + s * v) / std::pow(gap + 2.0 * r * s * v, 1.5); });
}

// (1/2) int 1 / |r e - s omega|^2 dmu.
double abs_inner(double r, double s) {
    const double gap = (r - s) * (r - s);
    return 0.5 * angular([&](double v) { return 1.0 / (gap + 2.0 * r * s * v); });
}

KernelSample kernel_sample(const RadialProfile& f, double r, int panels) {
    KernelSample out;
    out.r = r;
    const double lo = 0.5 * r, hi = 1.5 * r;
    auto sig = [&](double s) { return s * s * f(s) * signed_inner(r, s); };
    auto absk = [&](double s) { return s * s * std::abs(f(s)) * abs_inner(r, s); };
    // s = hi / u on (0, 1].
    auto tail = [&](auto&& g) {
        return panels_integrate([&](double u) { return u > 0.0 ? g(hi / u) * hi / (u * u) : 0.0; }, 0.0, 1.0, panels);
    };
    out.value = panels_integrate(sig, 0.0, lo, panels) + panels_integrate(sig, lo, r, panels) +
                panels_integrate(sig, r, hi, panels) + tail(sig);
    out.partial[0] = panels_integrate(absk, 0.0, lo, panels);
    out.partial[1] = panels_integrate(absk, lo, r, panels) + panels_integrate(absk, r, hi, panels);
    out.partial[2] = tail(absk);
    out.shell = panels_integrate([&](double s) { return s * s * f(s); }, 0.0, r, panels) / (r * r);
    out.weighted = (1.0 + r) * std::abs(out.value);
    for (double p : {out.value, out.partial[0], out.partial[1], out.partial[2]})
        if (!std::isfinite(p)) throw QuadratureError("radial integral is not finite");
    return out;
}

template <class F>
double adaptive(F&& g, double a, double b) {
    double err = 0.0, l1 = 0.0;
    const double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(g, a, b, 20, kTol, &err, &l1);
    if (!std::isfinite(v) || err > kAccept * std::max(l1, 1e-300)) throw QuadratureError("heat convolution did not converge");
    return v;
}

// d/dr of (g_tau * rho)(r) in R^3, tau = sigma^2, with s = r + 2 sigma z.
double heat_gradient(const RadialProfile& rho, double r, double sigma) {
    constexpr double Z = 10.0;
    const double b = r / sigma;
    const double z0 = std::max(-0.5 * b, -Z);
    const double rr = r * rho(r);
    auto sr = [&](double z) {
        const double s = r + 2.0 * sigma * z;
        return s * rho(s);
    };
    const double a1 = adaptive([&](double z) { return (sr(z) - rr) * z * std::exp(-z * z); }, z0, Z);
    const double a0 = 0.5 * rr * (std::exp(-z0 * z0) - std::exp(-Z * Z));
    const double bt = adaptive([&](double z) { return sr(z) * (z + b) * std::exp(-(z + b) * (z + b)); }, z0, Z);
    // e^{-z^2} - e^{-(z+b)^2} without cancellation.
    const double jn = adaptive([&](double z) { return -sr(z) * std::exp(-z * z) * std::expm1(-b * (2.0 * z + b)); }, z0, Z);
    return ((a1 + a0 + bt) / r - sigma * jn / (r * r)) / (std::sqrt(pi) * sigma);
}

DuhamelSample duhamel_sample(const SpaceTimeProfile& w, double alpha, double r, double t, int panels) {
    DuhamelSample out;
    out.r = r;
    out.t = t;
    out.value = panels_integrate(
        [&](double sigma) { return 2.0 * sigma * w.temporal(t - sigma * sigma) * heat_gradient(w.spatial, r, sigma); },
        0.0, std::sqrt(t), panels);
    if (!std::isfinite(out.value)) throw QuadratureError("Duhamel integral is not finite");
    out.space_envelope = std::pow(1.0 + r, alpha) * std::abs(out.value);
    out.time_envelope = std::pow(1.0 + t, 0.5 * alpha) * std::abs(out.value);
    return out;
}

std::vector<double> powers_of_two(int count) {
    std::vector<double> v;
    for (int i = 0; i < count; ++i) v.push_back(std::ldexp(1.0, i));
    return v;
}

double relative_change(double coarse, double fine) {
    if (coarse == 0.0) return fine == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return std::abs(fine / coarse - 1.0);
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

double weighted_sup(const RadialProfile& f, double theta) {
    double s = std::abs(f(0.0));
    constexpr int n = 24001;
    for (int i = 0; i < n; ++i) {
        const double r = std::pow(10.0, -6.0 + 12.0 * i / (n - 1));
        s = std::max(s, std::pow(1.0 + r, theta) * std::abs(f(r)));
    }
    return s;
}

KernelTable kernel_convolution_quadrature(const RadialProfile& f, int d, double alpha, int panels) {
    require_leading_case(d, alpha);
    if (panels < 1) throw std::invalid_argument("need at least one panel");
    KernelTable tab;
    tab.panels = panels;
    const auto radii = powers_of_two(7);
    tab.samples.resize(radii.size());
    parallel_for(radii.size(), [&](std::size_t i) { tab.samples[i] = kernel_sample(f, radii[i], panels); });
    for (const auto& s : tab.samples) tab.sup_weighted = std::max(tab.sup_weighted, s.weighted);
    tab.f_norm = weighted_sup(f, alpha);
    tab.ratio = tab.f_norm > 0.0 ? tab.sup_weighted / tab.f_norm : 0.0;
    return tab;
}

DuhamelTable duhamel_operator_quadrature(const SpaceTimeProfile& w, int d, double alpha, int panels) {
    require_leading_case(d, alpha);
    if (panels < 1) throw std::invalid_argument("need at least one panel");
    DuhamelTable tab;
    tab.panels = panels;
    const auto grid = powers_of_two(6);
    const std::size_t m = grid.size();
    tab.samples.resize(m * m);
    parallel_for(m * m, [&](std::size_t i) {
        tab.samples[i] = duhamel_sample(w, alpha, grid[i / m], grid[i % m], panels);
    });
    for (const auto& s : tab.samples) {
        tab.sup_space = std::max(tab.sup_space, s.space_envelope);
        tab.sup_time = std::max(tab.sup_time, s.time_envelope);
    }
    const double rho_sup = weighted_sup(w.spatial, 0.0);
    const double rho_w = weighted_sup(w.spatial, alpha + 1.0);
    const double theta_sup = weighted_sup(w.temporal, 0.0);
    const double theta_w = weighted_sup(w.temporal, 0.5 * (alpha + 1.0));
    tab.w_norm = std::max(rho_w * theta_sup, rho_sup * theta_w);
    if (tab.w_norm > 0.0) {
        tab.space_ratio = tab.sup_space / tab.w_norm;
        tab.time_ratio = tab.sup_time / tab.w_norm;
    }
    return tab;
}

double heat_derivative_l1_norm(double t, int d) {
    if (!(t > 0.0) || d < 1) throw std::invalid_argument("need t > 0 and d >= 1");
    const double c = 1.0 / std::sqrt(4.0 * pi * t);
    double err = 0.0;
    boost::math::quadrature::exp_sinh<double> half;
    const double deriv = 2.0 * half.integrate([&](double x) { return x / (2.0 * t) * c * std::exp(-x * x / (4.0 * t)); },
                                              0.0, std::numeric_limits<double>::infinity(), kTol, &err);
    if (err > 1e-10 * deriv) throw QuadratureError("Gaussian derivative integral did not converge");
    boost::math::quadrature::sinh_sinh<double> line;
    const double mass = line.integrate([&](double x) { return c * std::exp(-x * x / (4.0 * t)); }, kTol, &err);
    if (err > 1e-10) throw QuadratureError("Gaussian mass integral did not converge");
    return deriv * std::pow(mass, d - 1);
}

KernelStudy kernel_refinement_study(const RadialProfile& f, int panels) {
    KernelStudy s{kernel_convolution_quadrature(f, 3, 2.0, panels), kernel_convolution_quadrature(f, 3, 2.0, 2 * panels)};
    s.change = relative_change(s.coarse.ratio, s.fine.ratio);
    return s;
}

DuhamelStudy duhamel_refinement_study(const SpaceTimeProfile& w, int panels) {
    DuhamelStudy s{duhamel_operator_quadrature(w, 3, 2.0, panels), duhamel_operator_quadrature(w, 3, 2.0, 2 * panels)};
    s.space_change = relative_change(s.coarse.space_ratio, s.fine.space_ratio);
    s.time_change = relative_change(s.coarse.time_ratio, s.fine.time_ratio);
    return s;
}

std::string to_csv(const KernelStudy& study) {
    std::ostringstream os;
    os << "mesh,panels,r,value,shell,weighted,I1,I2,I3,ratio,change\n";
    for (const auto* tab : {&study.coarse, &study.fine})
        for (const auto& s : tab->samples)
            os << (tab == &study.coarse ? "coarse" : "fine") << ',' << tab->panels << ',' << fmt(s.r) << ','
               << fmt(s.value) << ',' << fmt(s.shell) << ',' << fmt(s.weighted) << ',' << fmt(s.partial[0]) << ','
               << fmt(s.partial[1]) << ',' << fmt(s.partial[2]) << ',' << fmt(tab->ratio) << ',' << fmt(study.change)
               << '\n';
    return os.str();
}

std::string to_csv(const DuhamelStudy& study) {
    std::ostringstream os;
    os << "mesh,panels,r,t,value,space_envelope,time_envelope,space_ratio,time_ratio,space_change,time_change\n";
    for (const auto* tab : {&study.coarse, &study.fine})
        for (const auto& s : tab->samples)
            os << (tab == &study.coarse ? "coarse" : "fine") << ',' << tab->panels << ',' << fmt(s.r) << ','
               << fmt(s.t) << ',' << fmt(s.value) << ',' << fmt(s.space_envelope) << ',' << fmt(s.time_envelope)
               << ',' << fmt(tab->space_ratio) << ',' << fmt(tab->time_ratio) << ',' << fmt(study.space_change)
               << ',' << fmt(study.time_change) << '\n';
    return os.str();
}

}  // namespace nlp::oracle
