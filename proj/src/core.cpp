#include "mixdet/core.hpp"

#include <cmath>
#include <sstream>

namespace mixdet {

Channel Channel::validate(std::vector<BinaryDist> rows) {
  if (rows.empty()) throw ValidationError("channel needs at least one row");
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const auto& r = rows[k];
    for (double v : r) {
      if (!(v >= 0.0 && v <= 1.0))
        throw OutOfRangeEntry("row " + std::to_string(k) + ": entry outside [0,1]");
    }
    if (std::abs(r[0] + r[1] - 1.0) > kStochasticTol)
      throw NonStochasticRow("row " + std::to_string(k) + " is not stochastic");
  }
  return Channel(std::move(rows));
}

Channel validate_channel(std::vector<BinaryDist> rows) {
  return Channel::validate(std::move(rows));
}

WeightVector WeightVector::validate(std::vector<double> weights) {
  if (weights.empty()) throw ValidationError("weight vector is empty");
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw ValidationError("negative weight");
    sum += w;
  }
  if (std::abs(sum - 1.0) > kStochasticTol)
    throw ValidationError("weights do not sum to 1");
  return WeightVector(std::move(weights));
}

WeightVector WeightVector::uniform(std::size_t k) {
  if (k == 0) throw ValidationError("weight vector is empty");
  return WeightVector(std::vector<double>(k, 1.0 / static_cast<double>(k)));
}

WeightVector WeightVector::one_hot(std::size_t k, std::size_t index) {
  if (index >= k) throw ValidationError("one-hot index out of range");
  std::vector<double> w(k, 0.0);
  w[index] = 1.0;
  return WeightVector(std::move(w));
}

std::string to_string(Role r) {
  return r == Role::natural ? "natural" : "adversarial";
}

std::string to_string(LossTag l) {
  switch (l) {
    case LossTag::ACE: return "ACE";
    case LossTag::KL: return "KL";
    case LossTag::FR: return "FR";
    case LossTag::Gini: return "Gini";
  }
  throw Error("bad LossTag");
}

std::string to_string(Norm n) {
  switch (n) {
    case Norm::L1: return "L1";
    case Norm::L2: return "L2";
    case Norm::Linf: return "Linf";
    case Norm::none: return "none";
  }
  throw Error("bad Norm");
}

Role role_from_string(const std::string& s) {
  if (s == "natural") return Role::natural;
  if (s == "adversarial") return Role::adversarial;
  throw ValidationError("unknown role '" + s + "'");
}

LossTag loss_from_string(const std::string& s) {
  if (s == "ACE") return LossTag::ACE;
  if (s == "KL") return LossTag::KL;
  if (s == "FR") return LossTag::FR;
  if (s == "Gini") return LossTag::Gini;
  throw ValidationError("unknown loss '" + s + "'");
}

Norm norm_from_string(const std::string& s) {
  if (s == "L1") return Norm::L1;
  if (s == "L2") return Norm::L2;
  if (s == "Linf") return Norm::Linf;
  if (s == "none") return Norm::none;
  throw ValidationError("unknown norm '" + s + "'");
}

std::string AttackKey::label() const {
  std::string out = algorithm;
  if (loss) out += "-" + to_string(*loss);
  out += "-" + to_string(norm);
  if (epsilon) {
    std::ostringstream os;
    os << "-eps" << *epsilon;
    out += os.str();
  }
  return out;
}

std::string AttackGroup::label() const {
  if (epsilon) {
    std::ostringstream os;
    os << to_string(norm) << "/eps=" << *epsilon;
    return os.str();
  }
  return to_string(norm) + "/no-eps";
}

bool AttackGroup::contains(const AttackKey& key) const {
  for (const auto& m : members)
    if (m == key) return true;
  return false;
}

AttackGroup expand_group(const GroupCell& cell) {
  if (cell.algorithms.empty()) throw EmptyCell("group cell has no algorithms");
  AttackGroup group;
  group.norm = cell.norm;
  group.epsilon = cell.epsilon;
  static constexpr LossTag kAllLosses[] = {LossTag::ACE, LossTag::KL,
                                           LossTag::FR, LossTag::Gini};
  for (const auto& alg : cell.algorithms) {
    if (alg.tag.empty()) throw EmptyCell("empty algorithm tag in cell");
    if (alg.starred) {
      for (LossTag l : kAllLosses)
        group.members.push_back({alg.tag, l, cell.norm, cell.epsilon});
    } else {
      group.members.push_back({alg.tag, std::nullopt, cell.norm, cell.epsilon});
    }
  }
  return group;
}

void ScoreRecord::check() const {
  if (sample_id.empty()) throw ValidationError("record has empty sample_id");
  if (scores.empty()) throw ValidationError("record has no detector scores");
  for (double s : scores) {
    if (!(s >= 0.0 && s <= 1.0))
      throw ValidationError("record '" + sample_id + "': score outside [0,1]");
  }
  if (role == Role::adversarial && !attack)
    throw ValidationError("adversarial record '" + sample_id + "' lacks an attack key");
  if (role == Role::natural && attack)
    throw ValidationError("natural record '" + sample_id + "' carries an attack key");
}

Channel ScoreRecord::to_channel() const {
  std::vector<BinaryDist> rows;
  rows.reserve(scores.size());
  for (double s : scores) rows.push_back({1.0 - s, s});
  return Channel::validate(std::move(rows));
}

}  // namespace mixdet
