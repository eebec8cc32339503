#include "nlp/certificate/ladder.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "nlp/models/initial_data.hpp"
#include "nlp/parallel.hpp"
#include "nlp/spectral/fft.hpp"

namespace nlp::certificate {
namespace {

constexpr double kLn2 = std::numbers::ln2;
const double kLog2Pi = std::log(2.0 * std::numbers::pi);

double norm2(const Frequency& x, int d) {
    double s = 0.0;
    for (int a = 0; a < d; ++a) s += x[a] * x[a];
    return s;
}

Shape with_values_like(const Shape& s, std::vector<double> values) {
    Shape out = s;
    out.values = std::move(values);
    return out;
}

}  // namespace

double ladder_time(int k) {
    if (k < 0) throw std::invalid_argument("ladder level must be nonnegative");
    // ln2 * (1 - 4^{-k}) / 3
    return kLn2 * (1.0 - std::ldexp(1.0, -2 * k)) / 3.0;
}

double ladder_gap(int k) {
    if (k < 1) throw std::invalid_argument("ladder gap needs k >= 1");
    return kLn2 * std::ldexp(1.0, -2 * k);
}

double blowup_time() { return kLn2 / 3.0; }

double log_alpha(int k, double t) {
    if (t < ladder_time(k)) return -std::numeric_limits<double>::infinity();
    const double p = std::ldexp(1.0, k);
    return (2.0 * k + 7.0 - p) * kLn2 - p * t;
}

double closed_form_threshold(int d) { return std::pow(2.0, 4.0 / 3.0) * std::pow(2.0 * std::numbers::pi, d); }

double closed_form_log_norm(int k, int d) { return -d * (std::ldexp(1.0, k) - 1.0) * kLog2Pi; }

std::vector<double> log_norm_chain(int k_max, int d) {
    std::vector<double> l{0.0};
    for (int k = 1; k <= k_max; ++k) l.push_back(2.0 * l.back() - d * kLog2Pi);
    return l;
}

Shape::Shape(int d_, double h_, std::array<long, 3> origin_, std::array<int, 3> extent_)
    : d(d_), h(h_), origin(origin_), extent(extent_) {
    for (int a = d; a < 3; ++a) {
        origin[a] = 0;
        extent[a] = 1;
    }
    values.assign(static_cast<std::size_t>(extent[0]) * extent[1] * extent[2], 0.0);
}

std::array<int, 3> Shape::unflatten(std::size_t flat) const {
    std::array<int, 3> idx{};
    for (int a = 2; a >= 0; --a) {
        idx[a] = static_cast<int>(flat % extent[a]);
        flat /= extent[a];
    }
    return idx;
}

Frequency Shape::point(std::size_t flat) const {
    const auto idx = unflatten(flat);
    Frequency x{};
    for (int a = 0; a < d; ++a) x[a] = static_cast<double>(origin[a] + idx[a]) * h;
    return x;
}

double Shape::mass() const {
    double s = 0.0;
    for (double v : values) s += v;
    return s * std::pow(h, d);
}

double Shape::max() const { return values.empty() ? 0.0 : *std::max_element(values.begin(), values.end()); }

SupportBox support_box(const Shape& m) {
    SupportBox box;
    bool first = true;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (!(m.values[i] > 0.0)) continue;
        const auto x = m.point(i);
        for (int a = 0; a < m.d; ++a) {
            box.lo[a] = first ? x[a] : std::min(box.lo[a], x[a]);
            box.hi[a] = first ? x[a] : std::max(box.hi[a], x[a]);
        }
        first = false;
    }
    return box;
}

bool in_level_set(const Frequency& xi, int d, int k, double tol) {
    const double r = std::sqrt(norm2(xi, d));
    return xi[0] >= std::ldexp(1.0, k - 1) - tol && xi[0] <= r + tol && r <= std::ldexp(1.0, k) + tol;
}

Shape build_w0(int d, double h) {
    if (!(h > 0.0) || h > 1.0 / 32.0) throw std::invalid_argument("bump lattice spacing must be in (0, 1/32]");
    // Box [1/2, 1] x [-1/4, 1/4]^{d-1}, one spare point on each side.
    const long lo0 = static_cast<long>(std::floor(0.5 / h)) - 1;
    const long hi0 = static_cast<long>(std::ceil(1.0 / h)) + 1;
    const long r = static_cast<long>(std::ceil(0.25 / h)) + 1;
    Shape m(d, h, {lo0, -r, -r}, {static_cast<int>(hi0 - lo0 + 1), static_cast<int>(2 * r + 1),
                                   static_cast<int>(2 * r + 1)});
    for (std::size_t i = 0; i < m.size(); ++i) m.values[i] = models::bump_profile(m.point(i), d);
    const double mass = m.mass();
    for (double& v : m.values) v /= mass;
    return m;
}

SelfConvolution self_convolve(const Shape& m, double clamp_rel) {
    const int d = m.d;
    std::vector<int> padded;
    std::size_t total = 1;
    for (int a = 0; a < d; ++a) {
        padded.push_back(2 * m.extent[a] - 1);
        total *= padded.back();
    }
    using cplx = std::complex<double>;
    // Slot 0: m, slots 1..d: m * eta_c / |eta|^2.
    std::vector<std::vector<cplx>> buf(d + 1, std::vector<cplx>(total));
    for (std::size_t i = 0; i < m.size(); ++i) {
        const auto idx = m.unflatten(i);
        std::size_t p = 0;
        for (int a = 0; a < d; ++a) p = p * padded[a] + idx[a];
        const auto eta = m.point(i);
        const double e2 = norm2(eta, d);
        buf[0][p] = m.values[i];
        for (int c = 0; c < d; ++c) buf[c + 1][p] = e2 > 0.0 ? m.values[i] * eta[c] / e2 : 0.0;
    }
    parallel_for(buf.size(), [&](std::size_t s) { spectral::dft_forward(padded, buf[s]); });
    for (std::size_t s = buf.size(); s-- > 0;)
        for (std::size_t i = 0; i < total; ++i) buf[s][i] *= buf[0][i];
    parallel_for(buf.size(), [&](std::size_t s) { spectral::dft_backward(padded, buf[s]); });

    std::array<long, 3> origin{};
    std::array<int, 3> extent{1, 1, 1};
    for (int a = 0; a < d; ++a) {
        origin[a] = 2 * m.origin[a];
        extent[a] = padded[a];
    }
    SelfConvolution out{Shape(d, m.h, origin, extent), Shape(d, m.h, origin, extent), 0.0};
    const double scale = std::pow(m.h, d) / static_cast<double>(total);
    double peak = 0.0;
    for (std::size_t i = 0; i < total; ++i) {
        out.plain.values[i] = buf[0][i].real() * scale;
        peak = std::max(peak, out.plain.values[i]);
    }
    out.raw_mass = out.plain.mass();
    for (std::size_t i = 0; i < total; ++i) {
        if (out.plain.values[i] < clamp_rel * peak) {
            out.plain.values[i] = 0.0;
            continue;
        }
        const auto xi = out.plain.point(i);
        double w = 0.0;
        for (int c = 0; c < d; ++c) w += xi[c] * buf[c + 1][i].real() * scale;
        out.weighted.values[i] = w;
    }
    return out;
}

Shape downsample(const Shape& s) {
    std::array<long, 3> origin{};
    std::array<int, 3> extent{1, 1, 1};
    std::array<int, 3> first{};
    for (int a = 0; a < s.d; ++a) {
        first[a] = static_cast<int>(((s.origin[a] % 2) + 2) % 2);
        origin[a] = (s.origin[a] + first[a]) / 2;
        extent[a] = (s.extent[a] - first[a] + 1) / 2;
    }
    Shape out(s.d, 2.0 * s.h, origin, extent);
    for (std::size_t i = 0; i < out.size(); ++i) {
        const auto idx = out.unflatten(i);
        std::size_t src = 0;
        for (int a = 0; a < 3; ++a) src = src * s.extent[a] + (a < s.d ? first[a] + 2 * idx[a] : 0);
        out.values[i] = s.values[src];
    }
    return out;
}

double LadderLevel::log_prefactor(double log_A) const { return std::ldexp(1.0, k) * log_A + log_chain + log_norm; }

double LadderLevel::log_barrier(double log_A, double t) const {
    if (t < t_k) return -std::numeric_limits<double>::infinity();
    return log_prefactor(log_A) - std::ldexp(1.0, k) * t;
}

LadderLevel base_level(Shape m0) {
    LadderLevel level;
    const double mass = m0.mass();
    if (!(mass > 0.0)) throw std::invalid_argument("base shape has no mass");
    for (double& v : m0.values) {
        if (v < 0.0) throw std::invalid_argument("base shape must be nonnegative");
        v /= mass;
    }
    level.shape = std::move(m0);
    level.support = support_box(level.shape);
    for (std::size_t i = 0; i < level.shape.size(); ++i)
        if (level.shape.values[i] > 0.0 && !in_level_set(level.shape.point(i), level.shape.d, 0, 1e-12))
            throw LevelRejected("base shape leaves E_0");
    // e^{-t} against 2^6 e^{-t}.
    level.margin = std::ldexp(1.0, -6);
    level.min_time_factor = 1.0;
    level.verified = true;
    return level;
}

LadderLevel convolve_level(const LadderLevel& prev, bool downsample_result, double support_tol) {
    const int d = prev.shape.d;
    auto conv = self_convolve(prev.shape);
    LadderLevel level;
    level.k = prev.k + 1;
    level.t_k = ladder_time(level.k);
    level.log_norm = 2.0 * prev.log_norm - d * kLog2Pi + std::log(conv.raw_mass);
    Shape plain = downsample_result ? downsample(conv.plain) : std::move(conv.plain);
    Shape weighted = downsample_result ? downsample(conv.weighted) : std::move(conv.weighted);
    std::vector<double> ratio(plain.size(), 0.0);
    const double tol = support_tol * std::ldexp(1.0, level.k);
    for (std::size_t i = 0; i < plain.size(); ++i) {
        if (!(plain.values[i] > 0.0)) continue;
        if (!in_level_set(plain.point(i), d, level.k, tol))
            throw LevelRejected("support of level " + std::to_string(level.k) + " leaves E_k");
        ratio[i] = weighted.values[i] / plain.values[i];
    }
    const double mass = plain.mass();
    for (double& v : plain.values) v /= mass;
    level.geometric = with_values_like(plain, std::move(ratio));
    level.shape = std::move(plain);
    level.support = support_box(level.shape);
    return level;
}

double time_factor(int k, double t, double a, int panels) {
    const double span = (t - ladder_time(k)) + ladder_gap(k);
    const double step = span / panels;
    // Integrand e^{-a u} in the offset u = t - s in [0, span].
    double left = 0.0, right = 0.0;
    for (int j = 0; j < panels; ++j) {
        left += std::exp(-a * j * step);
        right += std::exp(-a * (j + 1) * step);
    }
    return std::min(left, right) * step;
}

void verify_induction_step(LadderLevel& level, const LadderLevel& prev, std::span<const double> times, int panels) {
    const int k = level.k;
    if (k < 1) throw std::invalid_argument("induction step needs k >= 1");
    const auto& m = level.shape;
    std::vector<std::size_t> support;
    for (std::size_t i = 0; i < m.size(); ++i)
        if (m.values[i] > 0.0) support.push_back(i);
    if (support.empty()) throw LevelRejected("level " + std::to_string(k) + " has empty support");

    const double shift = std::ldexp(1.0, k);
    std::vector<double> gain(support.size()), tmin(support.size());
    parallel_for(support.size(), [&](std::size_t s) {
        const auto xi = m.point(support[s]);
        const double a = norm2(xi, m.d) - shift;
        double best = std::numeric_limits<double>::infinity();
        for (double t : times) {
            if (t < level.t_k) continue;
            best = std::min(best, time_factor(k, t, a, panels));
        }
        tmin[s] = best;
        gain[s] = best * level.geometric.values[support[s]];
    });
    const double g = *std::min_element(gain.begin(), gain.end());
    level.min_time_factor = *std::min_element(tmin.begin(), tmin.end());
    level.min_geometric = std::numeric_limits<double>::infinity();
    for (auto i : support) level.min_geometric = std::min(level.min_geometric, level.geometric.values[i]);
    if (!std::isfinite(g) || !(g > 0.0))
        throw LevelRejected("non-finite gain at level " + std::to_string(k));
    level.log_gain = std::log(g);
    level.log_chain = 2.0 * prev.log_chain + level.log_gain;
    level.margin = std::ldexp(g, 2 * k + 3);
    level.verified = true;
}

std::vector<double> level_sample_times(int k, int count) {
    std::vector<double> t;
    const double tk = ladder_time(k), ts = blowup_time();
    for (int j = 0; j <= count; ++j) t.push_back(tk + (ts - tk) * j / count);
    return t;
}

namespace {

Ladder extend(LadderLevel base, int k_max, bool downsample_levels) {
    if (k_max < 0) throw std::invalid_argument("k_max must be nonnegative");
    Ladder ladder;
    ladder.d = base.shape.d;
    ladder.levels.push_back(std::move(base));
    for (int k = 1; k <= k_max; ++k) {
        auto level = convolve_level(ladder.levels.back(), downsample_levels);
        verify_induction_step(level, ladder.levels.back(), level_sample_times(k));
        ladder.levels.push_back(std::move(level));
    }
    return ladder;
}

}  // namespace

Ladder build_recursion_ladder(int d, int k_max) {
    if (d < 2 || d > 3) throw std::invalid_argument("certificate dimension must be 2 or 3");
    return extend(base_level(build_w0(d, 1.0 / 32.0)), k_max, true);
}

Ladder build_fixed_lattice_ladder(Shape m0, int k_max) { return extend(base_level(std::move(m0)), k_max, false); }

}  // namespace nlp::certificate
