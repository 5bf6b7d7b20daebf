#pragma once

#include <utility>
#include <vector>

#include "curation/noise_models.hpp"
#include "curation/ranking.hpp"

namespace curation {

/// One human type: ground truth, noisy ranking model, values and population weight.
class HumanType {
 public:
  /// Throws DomainError if the model's center disagrees with the ground truth
  /// (Mallows and Plackett-Luce models) or the weight is outside (0, 1].
  HumanType(Ranking ground_truth, NoiseModel noise, ValueProfile values, double weight = 1.0);

  static HumanType mallows(const Ranking& ground_truth, double phi, ValueProfile values, double weight = 1.0);
  /// Plackett-Luce human whose item values are `values` laid out along the ground truth.
  static HumanType plackett_luce(const Ranking& ground_truth, double beta, ValueProfile values,
                                 double weight = 1.0);

  const Ranking& ground_truth() const { return ground_truth_; }
  const NoiseModel& noise() const { return noise_; }
  const ValueProfile& values() const { return values_; }
  double weight() const { return weight_; }
  int size() const { return ground_truth_.size(); }

  /// Value of item x: the value at x's rank in the ground truth.
  double utility(Item x) const { return values_.at(ground_truth_.position(x)); }

  HumanType with_weight(double w) const;

 private:
  Ranking ground_truth_;
  NoiseModel noise_;
  ValueProfile values_;
  double weight_;
};

/// Weighted set of human types over a common item universe.
class Population {
 public:
  /// Weights within 1e-9 of summing to one are renormalised (see renormalized());
  /// larger deviations throw DomainError. Mixed m throws DimensionError.
  explicit Population(std::vector<HumanType> types);

  const std::vector<HumanType>& types() const { return types_; }
  const HumanType& operator[](std::size_t i) const { return types_[i]; }
  std::size_t size() const { return types_.size(); }
  int items() const { return types_.front().size(); }
  bool renormalized() const { return renormalized_; }

 private:
  std::vector<HumanType> types_;
  bool renormalized_ = false;
};

/// Menu-producing algorithm: a ranking model plus menu size k. The menu is the
/// top k of a sampled ranking.
class AlgorithmPolicy {
 public:
  static AlgorithmPolicy noiseless(const Ranking& center, int k);
  /// phi must be positive or kNoiseless.
  static AlgorithmPolicy mallows(const Ranking& center, double phi, int k);
  static AlgorithmPolicy from_model(NoiseModel model, int k);

  const NoiseModel& model() const { return model_; }
  const Ranking& center() const { return model_center(model_); }
  int k() const { return k_; }
  int size() const { return model_size(model_); }
  bool is_noiseless() const;
  /// The fixed menu of a noiseless policy.
  ItemSet menu() const { return center().prefix(k_); }

  /// Same policy with items i and j exchanged in the underlying model.
  AlgorithmPolicy with_swapped(Item i, Item j) const;

 private:
  AlgorithmPolicy(NoiseModel model, int k);

  NoiseModel model_;
  int k_;
};

/// Maximum number of menus enumerated by the exact routines.
inline constexpr double kMenuEnumerationCap = 1e6;

/// Distribution over k-menus induced by the policy; zero-probability menus dropped.
/// Throws CapacityError when C(m, k) exceeds kMenuEnumerationCap.
std::vector<std::pair<ItemSet, double>> menu_distribution(const AlgorithmPolicy& a);

}  // namespace curation
