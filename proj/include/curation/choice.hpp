#pragma once

#include <vector>

#include "curation/item_set.hpp"
#include "curation/noise_models.hpp"

namespace curation {

/// Probability of each item being the final pick, indexed by item.
struct PickDistribution {
  std::vector<double> probs;

  PickDistribution() = default;
  explicit PickDistribution(int m) : probs(static_cast<std::size_t>(m), 0.0) {}

  int size() const { return static_cast<int>(probs.size()); }
  double operator[](Item x) const { return probs[static_cast<std::size_t>(x)]; }
  double& operator[](Item x) { return probs[static_cast<std::size_t>(x)]; }
  double total() const;
  /// Items with nonzero probability.
  ItemSet support() const;
};

/// Probability that `target` is ranked first among S under a Mallows model.
double choice_prob_mallows(const MallowsModel& model, ItemSet s, Item target);

/// First-among-S probabilities for every member of S in one O(m^2 |S|) pass.
PickDistribution choice_dist_mallows(const MallowsModel& model, ItemSet s);

/// exp(v_target / beta) / sum_{x in S} exp(v_x / beta).
double choice_prob_pl(const PlackettLuceModel& model, ItemSet s, Item target);

/// Pick distribution over S for any model kind.
PickDistribution choice_dist(const NoiseModel& model, ItemSet s);

}  // namespace curation
