#pragma once

#include <vector>

#include "nlp/spectral/field.hpp"

namespace nlp::diagnostics {

// Radial Littlewood-Paley profile: 1 on [1/2, 1], exp(-1/x) smooth steps on
// [1/3, 1/2] and [1, 4/3], 0 elsewhere.
double psi_hat(double r);

struct BesovConfig {
    double a = 0.0;
    int k_min = -4;
    int k_max = 4;

    bool operator==(const BesovConfig&) const = default;
};

struct BesovBlock {
    int k;
    double value;  // 2^{(a+d)k} sup_x |psi(2^k .) * f|
};

struct BesovResult {
    double norm = 0.0;
    std::vector<BesovBlock> blocks;
};

// block_k = 2^{(a+d)k} sup_x |F^{-1}[2^{-dk} psi_hat(2^{-k} xi) f_hat](x)|,
// norm = max_k block_k. Throws std::invalid_argument for an empty k range.
BesovResult besov_norm(const spectral::SpectralField& u_hat, const BesovConfig& cfg, int species = 0);

// Largest ratio besov_norm(a'-d) / pm_norm(a') any field on this lattice can
// reach over the configured blocks: max_k (2 pi)^{-d} sum_xi cell_k psi_hat(zeta) |zeta|^{-a'},
// zeta = 2^{-k} xi, cell_k = (2 pi / L)^d 2^{-dk}.
double embedding_bound(const spectral::TorusGrid& grid, double a_prime, int k_min, int k_max);

// (2 pi)^{-d} integral psi_hat(|zeta|) |zeta|^{-a'} d zeta, the continuum
// counterpart of embedding_bound.
double embedding_constant(int d, double a_prime);

}  // namespace nlp::diagnostics
