#pragma once

#include <optional>
#include <string>
#include <vector>

#include "curation/collaboration.hpp"

namespace curation {

struct SwapReport {
  Item i = 0;  // better of the pair in the original center
  Item j = 0;
  PickDistribution aligned;  // pick distribution under the original policy
  PickDistribution swapped;  // ... and with i and j exchanged
  double utility_delta = 0.0;  // E[u | swapped] - E[u | original]

  double delta(Item x) const { return swapped[x] - aligned[x]; }
};

/// Exact effect of exchanging items i and j in the algorithm's model.
/// Throws DomainError unless i precedes j in the policy's center.
SwapReport swap_effect(const HumanType& h, const AlgorithmPolicy& a, Item i, Item j);

/// P[top-2 menu = {i, r}] - P[top-2 menu = {j, r}]. Requires k = 2, r not in {i, j}
/// and i ahead of j in the policy's center.
double psi(const AlgorithmPolicy& a, Item i, Item j, Item r);

struct ConditionVerdict {
  bool applicable = true;
  bool holds = false;
  double lhs = 0.0;
  double rhs = 0.0;
  std::optional<int> witness;  // rank i' (0-based) satisfying the inequality
  // False when an intermediate bound the inequality is derived from fails on this
  // instance; `holds` then implies nothing about the swap's effect.
  bool premise_holds = true;
  std::string note;
};

// The checkers take 0-based rank positions i < j in the human's ground truth.

/// v_1 - v_i <= exp(-phi D) / (1 - exp(-phi D)) * D, with D = j - i. The premise is
/// the same inequality with the trailing D replaced by v_i - v_j.
ConditionVerdict check_mallows_harmful(const ValueProfile& values, double phi_h, int i, int j);

/// Some i' < i with v_i' / v_i >= [sum_{r != i,j} psi / sum_{r <= i'} psi exp(-phi_h (j - r + 1))]
/// / (1 - exp(-phi_h D)), with D = j - i + 1. Ranks in the formula are 1-based.
/// The premise is P[r > j] - P[r > i] >= exp(-phi_h (j - r + 1)) (1 - exp(-phi_h D))
/// for the human and every r <= i'.
ConditionVerdict check_mallows_helpful(const HumanType& h, const AlgorithmPolicy& a, int i, int j);

/// v_top - v_j <= 1.27 beta.
ConditionVerdict check_pl_harmful(const ValueProfile& values, double beta, int j);

/// Plackett-Luce analogue of check_mallows_helpful with D = v_i - v_j and weights
/// 1 / (exp((v_r - v_i) / beta) + 1).
ConditionVerdict check_pl_helpful(const HumanType& h, const AlgorithmPolicy& a, int i, int j);

enum class EdgeSource { LeastValued, TopValued, Transitive, Numeric };

const char* to_string(EdgeSource s);

/// Candidate `better` yields the human weakly higher utility than `worse`.
struct OrderEdge {
  int better = 0;
  int worse = 0;
  EdgeSource source = EdgeSource::Numeric;
};

struct PartialOrder {
  std::vector<OrderEdge> edges;
  std::vector<double> utilities;  // exact joint utility per candidate
};

/// Edges certified by single swaps of equally least-valued items (misaligned side
/// wins) or of a top-valued item with a lower one (aligned side wins), their
/// transitive closure, and numeric comparisons for the remaining pairs.
PartialOrder derive_partial_order(const HumanType& h, const std::vector<Ranking>& candidates, double phi_a, int k);

}  // namespace curation
