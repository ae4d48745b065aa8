#include "mixdet/infotheory.hpp"

#include <algorithm>
#include <cmath>

namespace mixdet {

namespace {

double clamp_prob(double v) {
  return std::clamp(v, kProbClamp, 1.0 - kProbClamp);
}

// Tiny negative values from cancellation get snapped to zero.
double clamp_nats(double v) {
  if (v < 0.0 && v > -1e-12) return 0.0;
  return v;
}

}  // namespace

double kl_divergence(const BinaryDist& p, const BinaryDist& q) {
  double sum = 0.0;
  for (int z = 0; z < 2; ++z) {
    if (p[z] <= 0.0) continue;
    sum += p[z] * std::log(p[z] / clamp_prob(q[z]));
  }
  return clamp_nats(sum);
}

BinaryDist marginal(const WeightVector& weights, const Channel& channel) {
  if (weights.size() != channel.size())
    throw LengthMismatch("weights and channel have different K");
  BinaryDist out{0.0, 0.0};
  for (std::size_t k = 0; k < channel.size(); ++k) {
    out[0] += weights[k] * channel.row(k)[0];
    out[1] += weights[k] * channel.row(k)[1];
  }
  return out;
}

double mutual_information(const WeightVector& weights, const Channel& channel) {
  const BinaryDist q = marginal(weights, channel);
  double mi = 0.0;
  for (std::size_t k = 0; k < channel.size(); ++k)
    mi += weights[k] * kl_divergence(channel.row(k), q);
  return clamp_nats(mi);
}

RegretDecomposition regret_decomposition(const WeightVector& weights,
                                         const Channel& channel,
                                         const BinaryDist& q) {
  const BinaryDist mix = marginal(weights, channel);
  double regret = 0.0;
  for (std::size_t k = 0; k < channel.size(); ++k)
    regret += weights[k] * kl_divergence(channel.row(k), q);
  return {clamp_nats(regret), mutual_information(weights, channel),
          kl_divergence(mix, q)};
}

}  // namespace mixdet
