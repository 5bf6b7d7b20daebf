#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "curation/collaboration.hpp"

namespace curation {

/// Absolute margin by which joint utility must exceed solo utility to count as uplift.
inline constexpr double kUpliftTolerance = 1e-12;

struct TypeOutcome {
  double solo = 0.0;
  double joint = 0.0;
  bool uplifted = false;
};

struct WelfareReport {
  double social_welfare = 0.0;
  std::vector<TypeOutcome> per_type;
  bool uplift_all = false;
  /// Population-weighted share of uplifted types.
  double uplift_fraction = 0.0;
  int uplifted_count = 0;
};

/// Sum over types of weight times expected joint utility.
double social_welfare(const Population& pop, const AlgorithmPolicy& a);

/// Exact per-type solo/joint comparison with strict uplift.
WelfareReport verify_uplift(const Population& pop, const AlgorithmPolicy& a);

/// Builds a report from precomputed per-type solo and joint utilities.
WelfareReport make_report(const Population& pop, const std::vector<double>& solo, const std::vector<double>& joint);

/// For a top-item-recovery population: the noiseless policy presenting the set of
/// distinct top items, padded with items no type values (ascending index).
/// Returns nullopt when that set is larger than min(k, m - 1).
/// Throws DomainError if some type is not top-item recovery.
std::optional<AlgorithmPolicy> top_recovery_strategy(const Population& pop, int k);

/// (best, worst) algorithm centers for a top-item-recovery human whose ground truth
/// is the identity: (x1, xm, ..., x2) and (x2, ..., xm, x1).
std::pair<Ranking, Ranking> best_worst_topitem_rankings(int m);

}  // namespace curation
