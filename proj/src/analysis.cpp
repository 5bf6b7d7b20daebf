#include "curation/analysis.hpp"

#include <cmath>
#include <limits>

#include "curation/errors.hpp"

namespace curation {

SwapReport swap_effect(const HumanType& h, const AlgorithmPolicy& a, Item i, Item j) {
  if (!a.center().contains(i) || !a.center().contains(j) || i == j)
    throw DomainError("swap_effect: invalid item pair");
  if (!a.center().prefers(i, j)) throw DomainError("swap_effect: first item must precede the second in the center");
  SwapReport rep;
  rep.i = i;
  rep.j = j;
  rep.aligned = joint_pick_dist(h, a);
  rep.swapped = joint_pick_dist(h, a.with_swapped(i, j));
  rep.utility_delta = expected_utility(rep.swapped, h) - expected_utility(rep.aligned, h);
  return rep;
}

double psi(const AlgorithmPolicy& a, Item i, Item j, Item r) {
  if (a.k() != 2) throw DomainError("psi: requires menu size k = 2");
  const Ranking& c = a.center();
  if (!c.contains(i) || !c.contains(j) || !c.contains(r)) throw DomainError("psi: unknown item");
  if (r == i || r == j || i == j) throw DomainError("psi: r must differ from i and j");
  if (!c.prefers(i, j)) throw DomainError("psi: i must precede j in the center");
  return topk_set_prob(a.model(), ItemSet{i, r}) - topk_set_prob(a.model(), ItemSet{j, r});
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_ranks(int m, int i, int j) {
  if (i < 0 || j >= m || i >= j) throw DomainError("condition checker: need ranks 0 <= i < j < m");
}

ConditionVerdict not_applicable(std::string why) {
  ConditionVerdict v;
  v.applicable = false;
  v.note = std::move(why);
  return v;
}

// Witness search over i' < i. The numerator sums psi(i, j, r) * numer_weight(r) over
// r != i, j; the witness denominator sums psi(i, j, r) * denom_weight(r) over r <= i'.
template <typename NumerWeight, typename DenomWeight>
ConditionVerdict helpful_search(const HumanType& h, const AlgorithmPolicy& a, int i, int j, NumerWeight numer_weight,
                                DenomWeight denom_weight, double scale) {
  const Ranking& gt = h.ground_truth();
  std::vector<double> term(static_cast<std::size_t>(h.size()), 0.0);
  double numer = 0.0;
  for (int r = 0; r < h.size(); ++r) {
    if (r == i || r == j) continue;
    term[static_cast<std::size_t>(r)] = psi(a, gt.at(i), gt.at(j), gt.at(r));
    numer += term[static_cast<std::size_t>(r)] * numer_weight(r);
  }
  ConditionVerdict best;
  double denom = 0.0;
  for (int ip = 0; ip < i; ++ip) {
    denom += term[static_cast<std::size_t>(ip)] * denom_weight(ip);
    ConditionVerdict v;
    v.lhs = h.values().at(ip) / h.values().at(i);
    v.rhs = (denom > 0.0 && scale < kInf) ? numer / denom * scale : kInf;
    v.holds = v.rhs < kInf && v.lhs >= v.rhs;
    v.witness = ip;
    if (ip == 0 || v.holds) best = v;
    if (v.holds) break;
  }
  if (!best.holds) best.witness.reset();
  return best;
}

}  // namespace

ConditionVerdict check_mallows_harmful(const ValueProfile& values, double phi_h, int i, int j) {
  check_ranks(values.size(), i, j);
  if (!(phi_h > 0.0)) return not_applicable("human accuracy must be positive");
  const double d = j - i;
  ConditionVerdict v;
  v.lhs = values.top() - values.at(i);
  v.rhs = phi_h == kNoiseless ? 0.0 : d / std::expm1(phi_h * d);
  v.holds = v.lhs <= v.rhs;
  const double gap = values.at(i) - values.at(j);
  v.premise_holds = v.lhs <= (phi_h == kNoiseless ? 0.0 : gap / std::expm1(phi_h * d));
  return v;
}

ConditionVerdict check_mallows_helpful(const HumanType& h, const AlgorithmPolicy& a, int i, int j) {
  check_ranks(h.size(), i, j);
  const auto* mm = std::get_if<MallowsModel>(&h.noise());
  if (mm == nullptr) throw DomainError("check_mallows_helpful: human must follow a Mallows model");
  if (a.k() != 2) throw DomainError("check_mallows_helpful: requires k = 2");
  if (i < 1) return not_applicable("no rank above i to serve as witness");
  if (h.values().at(i) == 0.0) return not_applicable("v_i is zero");
  const double phi = mm->phi();
  const double d = j - i + 1;
  const double scale = phi > 0.0 ? 1.0 / -std::expm1(-phi * d) : kInf;
  auto unit = [](int) { return 1.0; };
  auto decay = [&](int r) { return phi == kNoiseless ? 0.0 : std::exp(-phi * (j - r + 1)); };
  ConditionVerdict v = helpful_search(h, a, i, j, unit, decay, scale);
  const Ranking& gt = h.ground_truth();
  const int last = v.witness ? *v.witness : i - 1;
  for (int r = 0; r <= last; ++r) {
    const double spread = mallows_pairwise_prob(*mm, gt.at(r), gt.at(j)) - mallows_pairwise_prob(*mm, gt.at(r), gt.at(i));
    if (spread < decay(r) / scale - 1e-15) v.premise_holds = false;
  }
  return v;
}

ConditionVerdict check_pl_harmful(const ValueProfile& values, double beta, int j) {
  if (j < 0 || j >= values.size()) throw DomainError("check_pl_harmful: rank out of range");
  if (!(beta > 0.0)) throw DomainError("check_pl_harmful: beta must be positive");
  ConditionVerdict v;
  v.lhs = values.top() - values.at(j);
  v.rhs = 1.27 * beta;
  v.holds = v.lhs <= v.rhs;
  return v;
}

ConditionVerdict check_pl_helpful(const HumanType& h, const AlgorithmPolicy& a, int i, int j) {
  check_ranks(h.size(), i, j);
  const auto* pl = std::get_if<PlackettLuceModel>(&h.noise());
  if (pl == nullptr) throw DomainError("check_pl_helpful: human must follow a Plackett-Luce model");
  if (a.k() != 2) throw DomainError("check_pl_helpful: requires k = 2");
  if (i < 1) return not_applicable("no rank above i to serve as witness");
  if (h.values().at(i) == 0.0) return not_applicable("v_i is zero");
  const double beta = pl->beta();
  const double vi = h.values().at(i);
  const double d = vi - h.values().at(j);
  const double denom_d = -std::expm1(-d / beta);
  const double scale = denom_d > 0.0 ? 2.0 / denom_d : kInf;
  auto weight = [&](int r) { return 1.0 / (std::exp((h.values().at(r) - vi) / beta) + 1.0); };
  return helpful_search(h, a, i, j, weight, weight, scale);
}

const char* to_string(EdgeSource s) {
  switch (s) {
    case EdgeSource::LeastValued: return "least-valued-swap";
    case EdgeSource::TopValued: return "top-valued-swap";
    case EdgeSource::Transitive: return "transitive";
    case EdgeSource::Numeric: return "numeric";
  }
  return "unknown";
}

PartialOrder derive_partial_order(const HumanType& h, const std::vector<Ranking>& candidates, double phi_a, int k) {
  const int n = static_cast<int>(candidates.size());
  PartialOrder out;
  for (const auto& c : candidates) {
    if (c.size() != h.size()) throw DimensionError("derive_partial_order: candidate size mismatch");
    out.utilities.push_back(joint_utility(h, AlgorithmPolicy::from_model(MallowsModel(c, phi_a), k)));
  }
  const double v_min = h.values().at(h.size() - 1);
  const double v_top = h.values().top();
  std::vector<std::vector<char>> reach(static_cast<std::size_t>(n), std::vector<char>(static_cast<std::size_t>(n), 0));
  auto certify = [&](int better, int worse, EdgeSource src) {
    out.edges.push_back({better, worse, src});
    reach[static_cast<std::size_t>(better)][static_cast<std::size_t>(worse)] = 1;
  };

  for (int u = 0; u < n; ++u) {
    for (int w = u + 1; w < n; ++w) {
      std::vector<int> diff;
      for (int p = 0; p < h.size(); ++p)
        if (candidates[static_cast<std::size_t>(u)].at(p) != candidates[static_cast<std::size_t>(w)].at(p))
          diff.push_back(p);
      if (diff.size() != 2) continue;
      const Ranking& cu = candidates[static_cast<std::size_t>(u)];
      const Item a = cu.at(diff[0]), b = cu.at(diff[1]);  // a ahead of b in u
      const double va = h.utility(a), vb = h.utility(b);
      const bool u_agrees = h.ground_truth().prefers(a, b);
      if (va == v_min && vb == v_min) {
        if (u_agrees)
          certify(w, u, EdgeSource::LeastValued);
        else
          certify(u, w, EdgeSource::LeastValued);
      } else if (va != vb && std::max(va, vb) == v_top) {
        // The candidate that keeps the top-valued item ahead wins.
        if (va > vb)
          certify(u, w, EdgeSource::TopValued);
        else
          certify(w, u, EdgeSource::TopValued);
      }
    }
  }

  auto direct = reach;
  for (int m = 0; m < n; ++m)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (reach[static_cast<std::size_t>(a)][static_cast<std::size_t>(m)] &&
            reach[static_cast<std::size_t>(m)][static_cast<std::size_t>(b)])
          reach[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = 1;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b && reach[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] &&
          !direct[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)])
        out.edges.push_back({a, b, EdgeSource::Transitive});

  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (reach[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] ||
          reach[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)])
        continue;
      const double ua = out.utilities[static_cast<std::size_t>(a)], ub = out.utilities[static_cast<std::size_t>(b)];
      if (std::abs(ua - ub) <= 1e-12) continue;
      if (ua > ub)
        out.edges.push_back({a, b, EdgeSource::Numeric});
      else
        out.edges.push_back({b, a, EdgeSource::Numeric});
    }
  }
  return out;
}

}  // namespace curation
