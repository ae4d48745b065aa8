#include "mixdet/capacity.hpp"

#include <cmath>
#include <vector>

#include "mixdet/infotheory.hpp"

namespace mixdet {

SolverResult solve_capacity(const Channel& channel, const SolverConfig& config) {
  const std::size_t k = channel.size();
  std::vector<double> w;
  if (config.initial_weights) {
    if (config.initial_weights->size() != k)
      throw LengthMismatch("initial weights do not match channel K");
    w = config.initial_weights->values();
    for (double wi : w)
      if (wi <= 0.0)
        throw ZeroInitialWeight("multiplicative updates cannot leave a zero weight");
  } else {
    w.assign(k, 1.0 / static_cast<double>(k));
  }

  std::vector<double> div(k);
  for (int iter = 1;; ++iter) {
    const auto weights = WeightVector::validate(w);
    const BinaryDist q = marginal(weights, channel);
    double mi = 0.0, max_div = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      div[i] = kl_divergence(channel.row(i), q);
      mi += w[i] * div[i];
      if (div[i] > max_div) max_div = div[i];
    }
    const double gap = max_div - mi;
    if (gap <= config.tolerance || iter >= config.max_iterations)
      return {weights, mi, iter, gap <= config.tolerance, gap};

    double norm = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      // exp(div - max_div) keeps the update safely scaled; the common
      // factor cancels in the normalization.
      w[i] *= std::exp(div[i] - max_div);
      norm += w[i];
    }
    for (std::size_t i = 0; i < k; ++i) w[i] /= norm;
  }
}

namespace {

void enumerate_lattice(const Channel& channel, int resolution, std::size_t index,
                       int remaining, std::vector<int>& counts,
                       std::vector<int>& best_counts, double& best_mi) {
  const std::size_t k = channel.size();
  if (index + 1 == k) {
    counts[index] = remaining;
    std::vector<double> w(k);
    for (std::size_t i = 0; i < k; ++i)
      w[i] = static_cast<double>(counts[i]) / resolution;
    const double mi = mutual_information(WeightVector::validate(w), channel);
    if (mi > best_mi) {
      best_mi = mi;
      best_counts = counts;
    }
    return;
  }
  for (int c = 0; c <= remaining; ++c) {
    counts[index] = c;
    enumerate_lattice(channel, resolution, index + 1, remaining - c, counts,
                      best_counts, best_mi);
  }
}

}  // namespace

SolverResult grid_oracle(const Channel& channel, int resolution) {
  const std::size_t k = channel.size();
  if (k > 4) throw TooManyDetectors("grid oracle supports K <= 4");
  if (resolution < 2) throw ValidationError("grid resolution must be >= 2");

  std::vector<int> counts(k, 0), best_counts(k, 0);
  best_counts.back() = resolution;  // first point in lex order is all-mass-last
  double best_mi = -1.0;
  enumerate_lattice(channel, resolution, 0, resolution, counts, best_counts,
                    best_mi);

  std::vector<double> w(k);
  for (std::size_t i = 0; i < k; ++i)
    w[i] = static_cast<double>(best_counts[i]) / resolution;
  const auto weights = WeightVector::validate(w);
  const double mi = mutual_information(weights, channel);
  double max_div = 0.0;
  const BinaryDist q = marginal(weights, channel);
  for (std::size_t i = 0; i < k; ++i)
    max_div = std::max(max_div, kl_divergence(channel.row(i), q));
  return {weights, mi, 0, true, max_div - mi};
}

}  // namespace mixdet
