#pragma once

#include "mixdet/core.hpp"

namespace mixdet {

// All quantities are in nats. Denominators are clamped to
// [1e-12, 1 - 1e-12] so degenerate detector outputs stay finite;
// this deliberately differs from the extended-real convention.

inline constexpr double kProbClamp = 1e-12;

/// D_KL(p || q) for binary distributions, with 0*ln(0/.) = 0.
double kl_divergence(const BinaryDist& p, const BinaryDist& q);

/// Mixture output distribution P(z) = sum_k w_k * rows[k][z].
BinaryDist marginal(const WeightVector& weights, const Channel& channel);

/// I(Omega; Z) = sum_k w_k * D_KL(rows[k] || marginal). In [0, ln 2].
double mutual_information(const WeightVector& weights, const Channel& channel);

struct RegretDecomposition {
  double expected_regret;  // sum_k w_k * KL(rows[k] || q)
  double mi;               // mutual information
  double gap;              // KL(marginal || q); zero iff q is the marginal
};

// Satisfies expected_regret == mi + gap to within 1e-10.
RegretDecomposition regret_decomposition(const WeightVector& weights,
                                         const Channel& channel,
                                         const BinaryDist& q);

}  // namespace mixdet
