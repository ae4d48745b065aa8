#pragma once

#include <vector>

#include "mixdet/errors.hpp"

namespace mixdet {

/// Probability vector over C >= 2 classes.
class ClassDistribution {
 public:
  static ClassDistribution validate(std::vector<double> probs);

  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t y) const { return probs_[y]; }
  const std::vector<double>& values() const { return probs_; }

 private:
  explicit ClassDistribution(std::vector<double> p) : probs_(std::move(p)) {}
  std::vector<double> probs_;
};

// The four attacker objectives, as plain functions of the clean/truth and
// adversarial class distributions.

/// Cross-entropy of the adversarial distribution under the truth
/// distribution: sum_y truth_y * (-ln adv_y).
double ace_loss(const ClassDistribution& truth, const ClassDistribution& adv);

/// D_KL(clean || adv).
double kl_loss(const ClassDistribution& clean, const ClassDistribution& adv);

/// 2 * arccos(sum_y sqrt(clean_y * adv_y)). Range [0, pi]; symmetric.
double fr_loss(const ClassDistribution& clean, const ClassDistribution& adv);

/// 1 - sqrt(sum_y adv_y^2). Ignores the clean distribution entirely.
double gini_loss(const ClassDistribution& adv);

}  // namespace mixdet
