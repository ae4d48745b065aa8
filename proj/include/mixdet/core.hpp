#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mixdet/errors.hpp"

namespace mixdet {

// Binary output distribution (P(z=0), P(z=1)).
using BinaryDist = std::array<double, 2>;

inline constexpr double kStochasticTol = 1e-9;

/// K x 2 row-stochastic matrix: row k is detector k's output distribution
/// for one fixed input sample.
class Channel {
 public:
  // Throws NonStochasticRow / OutOfRangeEntry / ValidationError.
  static Channel validate(std::vector<BinaryDist> rows);

  std::size_t size() const { return rows_.size(); }
  const BinaryDist& row(std::size_t k) const { return rows_[k]; }
  const std::vector<BinaryDist>& rows() const { return rows_; }

 private:
  explicit Channel(std::vector<BinaryDist> rows) : rows_(std::move(rows)) {}
  std::vector<BinaryDist> rows_;
};

Channel validate_channel(std::vector<BinaryDist> rows);

/// Point on the (K-1)-simplex.
class WeightVector {
 public:
  // Throws ValidationError if negative entries or the sum is off by > 1e-9.
  static WeightVector validate(std::vector<double> weights);
  static WeightVector uniform(std::size_t k);
  static WeightVector one_hot(std::size_t k, std::size_t index);

  std::size_t size() const { return weights_.size(); }
  double operator[](std::size_t k) const { return weights_[k]; }
  const std::vector<double>& values() const { return weights_; }

 private:
  explicit WeightVector(std::vector<double> w) : weights_(std::move(w)) {}
  std::vector<double> weights_;
};

enum class Role { natural, adversarial };
enum class LossTag { ACE, KL, FR, Gini };
enum class Norm { L1, L2, Linf, none };

std::string to_string(Role r);
std::string to_string(LossTag l);
std::string to_string(Norm n);
Role role_from_string(const std::string& s);
LossTag loss_from_string(const std::string& s);
Norm norm_from_string(const std::string& s);

/// Identity of one attack variant: algorithm tag, optional crafting loss,
/// norm constraint, optional perturbation magnitude.
struct AttackKey {
  std::string algorithm;
  std::optional<LossTag> loss;
  Norm norm = Norm::none;
  std::optional<double> epsilon;

  bool operator==(const AttackKey&) const = default;
  auto operator<=>(const AttackKey&) const = default;
  std::string label() const;
};

/// A (norm, epsilon) cell with all attack variants evaluated simultaneously.
struct AttackGroup {
  Norm norm = Norm::none;
  std::optional<double> epsilon;
  std::vector<AttackKey> members;

  std::string label() const;
  bool contains(const AttackKey& key) const;
};

/// One algorithm entry of a cell; starred algorithms expand to the four
/// loss variants.
struct CellAlgorithm {
  std::string tag;
  bool starred = false;
};

struct GroupCell {
  std::vector<CellAlgorithm> algorithms;
  Norm norm = Norm::none;
  std::optional<double> epsilon;
};

// Throws EmptyCell. Each starred algorithm contributes 4 members
// (ACE, KL, FR, Gini), each unstarred contributes 1.
AttackGroup expand_group(const GroupCell& cell);

/// One (sample, variant) row of a score matrix.
struct ScoreRecord {
  std::string sample_id;
  Role role = Role::natural;
  std::optional<AttackKey> attack;  // present iff role == adversarial
  bool fooled = false;              // meaningful only for adversarial
  std::vector<double> scores;       // scores[k] = q^(k)(z=1 | u0)

  bool operator==(const ScoreRecord&) const = default;

  // Throws ValidationError on invariant breach.
  void check() const;

  // Binary channel built from the scores, each complemented to a row.
  Channel to_channel() const;
};

}  // namespace mixdet
