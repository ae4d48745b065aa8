#include "mixdet/losses.hpp"

#include <algorithm>
#include <cmath>

namespace mixdet {

namespace {

constexpr double kClamp = 1e-12;

void require_same_size(const ClassDistribution& a, const ClassDistribution& b) {
  if (a.size() != b.size())
    throw LengthMismatch("class distributions have different sizes");
}

}  // namespace

ClassDistribution ClassDistribution::validate(std::vector<double> probs) {
  if (probs.size() < 2)
    throw ValidationError("class distribution needs at least two classes");
  double sum = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0 && p <= 1.0))
      throw ValidationError("class probability outside [0,1]");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw ValidationError("class probabilities do not sum to 1");
  return ClassDistribution(std::move(probs));
}

double ace_loss(const ClassDistribution& truth, const ClassDistribution& adv) {
  require_same_size(truth, adv);
  double sum = 0.0;
  for (std::size_t y = 0; y < truth.size(); ++y) {
    if (truth[y] <= 0.0) continue;
    sum -= truth[y] * std::log(std::max(adv[y], kClamp));
  }
  return std::max(sum, 0.0);
}

double kl_loss(const ClassDistribution& clean, const ClassDistribution& adv) {
  require_same_size(clean, adv);
  double sum = 0.0;
  for (std::size_t y = 0; y < clean.size(); ++y) {
    if (clean[y] <= 0.0) continue;
    sum += clean[y] * std::log(clean[y] / std::max(adv[y], kClamp));
  }
  return std::max(sum, 0.0);
}

double fr_loss(const ClassDistribution& clean, const ClassDistribution& adv) {
  require_same_size(clean, adv);
  double e = 0.0;
  for (std::size_t y = 0; y < clean.size(); ++y)
    e += std::sqrt(clean[y] * adv[y]);
  return 2.0 * std::acos(std::clamp(e, 0.0, 1.0));
}

double gini_loss(const ClassDistribution& adv) {
  double sq = 0.0;
  for (std::size_t y = 0; y < adv.size(); ++y) sq += adv[y] * adv[y];
  return 1.0 - std::sqrt(sq);
}

}  // namespace mixdet
