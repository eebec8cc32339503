#pragma once

#include <array>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "nlp/spectral/multipliers.hpp"

namespace nlp::certificate {

using spectral::Frequency;

// t_k = ln2 * sum_{j=1}^k 4^{-j}; t_0 = 0. Throws std::invalid_argument for k < 0.
double ladder_time(int k);
// t_k - t_{k-1} = ln2 * 4^{-k}, without cancellation.
double ladder_gap(int k);
// Limit of t_k: ln2 / 3.
double blowup_time();

// ln of the closed-form chain 2^{2k+7-2^k} e^{-2^k t} 1_{t >= t_k};
// -infinity below t_k.
double log_alpha(int k, double t);

// 2^{4/3} (2 pi)^d.
double closed_form_threshold(int d);

// ln of the closed-form L1 norm (2 pi)^{-d (2^k - 1)}.
double closed_form_log_norm(int k, int d);
// The same quantity through the level recursion l_k = 2 l_{k-1} - d ln(2 pi),
// entries 0..k_max. Pure log arithmetic, so any k_max is overflow-free.
std::vector<double> log_norm_chain(int k_max, int d);

// Nonnegative function on the lattice h Z^d, stored on a box. Point i along
// an axis sits at (origin + i) h.
struct Shape {
    int d = 2;
    double h = 1.0;
    std::array<long, 3> origin{0, 0, 0};
    std::array<int, 3> extent{1, 1, 1};
    std::vector<double> values;

    Shape() = default;
    Shape(int d, double h, std::array<long, 3> origin, std::array<int, 3> extent);

    std::size_t size() const { return values.size(); }
    std::array<int, 3> unflatten(std::size_t flat) const;
    Frequency point(std::size_t flat) const;
    // h^d * sum of values.
    double mass() const;
    double max() const;
};

struct SupportBox {
    Frequency lo{};
    Frequency hi{};
};
SupportBox support_box(const Shape& m);

// Dyadic set E_k = {2^{k-1} <= xi_1 <= |xi| <= 2^k}, widened by tol.
bool in_level_set(const Frequency& xi, int d, int k, double tol = 0.0);

// Bump of radius 1/4 centred at 3/4 e_1 (the models profile) sampled on h Z^d
// and scaled to unit discrete mass. Throws std::invalid_argument for h > 1/32.
Shape build_w0(int d, double h);

// Full-resolution self convolution on the same lattice (padded transform):
//   plain(xi)    = h^d sum_eta m(xi - eta) m(eta)
//   weighted(xi) = h^d sum_eta (xi.eta / |eta|^2) m(xi - eta) m(eta)
// Values below clamp_rel * max are set to zero in both.
struct SelfConvolution {
    Shape plain;
    Shape weighted;
    double raw_mass = 0.0;  // mass of plain before clamping
};
SelfConvolution self_convolve(const Shape& m, double clamp_rel = 1e-10);

// Every other lattice point, on the lattice 2h Z^d.
Shape downsample(const Shape& s);

class LevelRejected : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct LadderLevel {
    int k = 0;
    double t_k = 0.0;
    Shape shape;      // m_k, unit discrete mass
    Shape geometric;  // W_k = weighted / plain on supp m_k; empty at k = 0
    SupportBox support;
    // ln of the realized ||w_k||_{L1}.
    double log_norm = 0.0;
    // ln of the measured per-level gain (0 at k = 0) and of the chain C_k.
    double log_gain = 0.0;
    double log_chain = 0.0;
    double min_geometric = 0.0;
    double min_time_factor = 0.0;
    // Measured ratio to the closed-form chain at this level.
    double margin = 0.0;
    bool verified = false;

    // ln(A^{2^k} C_k ||w_k||).
    double log_prefactor(double log_A) const;
    // ln of the barrier amplitude at time t (before the shape factor);
    // -infinity before t_k.
    double log_barrier(double log_A, double t) const;
};

// Level 0 from a unit-mass shape.
LadderLevel base_level(Shape m0);

// m_k = m_{k-1} * m_{k-1}, renormalized; log_norm_k = 2 log_norm_{k-1} - d ln(2 pi) + ln(raw mass).
// With downsample the result moves to spacing 2h. Throws LevelRejected when the
// support leaves E_k by more than support_tol * 2^k.
LadderLevel convolve_level(const LadderLevel& prev, bool downsample = true, double support_tol = 1e-12);

// Pessimistic Riemann value (left or right sum, whichever is smaller) of
// int_{t_{k-1}}^t e^{(s - t) a} ds with the given number of panels.
double time_factor(int k, double t, double a, int panels = 256);

// Fills the gain fields of level k >= 1:
//   g_k = min over sample times t >= t_k and xi in supp m_k of T_k(t, xi) W_k(xi),
// with T_k = time_factor(k, t, |xi|^2 - 2^k). log_chain = 2 log_chain_{k-1} + ln g_k.
// The margin against the closed-form chain is 2^{2k+3} g_k for k >= 1 and
// min_t e^{-t} / alpha_0(t) = 2^{-6} for k = 0. Throws LevelRejected on a
// non-finite gain.
void verify_induction_step(LadderLevel& level, const LadderLevel& prev, std::span<const double> times,
                           int panels = 256);

// Sample times t_k + j (t* - t_k) / count, j = 0..count.
std::vector<double> level_sample_times(int k, int count = 8);

struct Ladder {
    int d = 2;
    std::vector<LadderLevel> levels;
};

// Levels 0..k_max on the certificate lattices h_k = 2^{k-5}.
Ladder build_recursion_ladder(int d, int k_max);
// Levels 0..k_max on a fixed lattice of spacing h starting from m0 (no downsampling).
Ladder build_fixed_lattice_ladder(Shape m0, int k_max);

}  // namespace nlp::certificate
