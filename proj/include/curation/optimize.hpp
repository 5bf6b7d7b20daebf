#pragma once

#include <optional>
#include <string>
#include <vector>

#include "curation/welfare.hpp"

namespace curation {

struct OptimizeResult {
  ItemSet menu;
  double welfare = 0.0;
  std::vector<double> per_type;
  std::string method;
  long nodes = 0;
  long evaluations = 0;

  /// The noiseless policy presenting `menu`, with the remaining items appended in index order.
  AlgorithmPolicy policy(int m) const;
};

/// Noiseless policy whose top-|menu| items are `menu` (ascending), rest ascending.
AlgorithmPolicy menu_policy(ItemSet menu, int m);

/// Exact argmax of welfare over all k-menus; ties go to the lexicographically
/// smallest menu. Throws CapacityError when C(m, k) exceeds kMenuEnumerationCap.
OptimizeResult enumerate_best_menu(const Population& pop, int k);

/// Depth-first include/exclude search with a per-type best-completion bound.
/// Same optimum and tie-break as enumerate_best_menu. Requires m <= 40.
OptimizeResult branch_and_bound_menu(const Population& pop, int k);

/// Best welfare over k-menus whose noiseless policy uplifts every type; nullopt if none does.
std::optional<OptimizeResult> optimize_with_uplift(const Population& pop, int k);

struct NoisyUpliftPoint {
  double phi = 0.0;
  WelfareReport report;
  /// Smallest joint-minus-solo utility over the types.
  double min_gain = 0.0;
};

struct NoisyUpliftResult {
  double best_phi = 0.0;
  WelfareReport best_report;
  double best_min_gain = 0.0;
  std::vector<NoisyUpliftPoint> points;
};

/// Evaluates Mallows(center, phi) policies for each phi in the grid (kNoiseless
/// allowed) and returns the phi maximising the minimum per-type gain.
NoisyUpliftResult noisy_uplift_search(const Population& pop, const Ranking& center, const std::vector<double>& phi_grid,
                                      int k);

}  // namespace curation
