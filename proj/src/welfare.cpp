#include "curation/welfare.hpp"

#include <algorithm>

#include "curation/errors.hpp"

namespace curation {

double social_welfare(const Population& pop, const AlgorithmPolicy& a) {
  double w = 0.0;
  for (const auto& h : pop.types()) w += h.weight() * joint_utility(h, a);
  return w;
}

WelfareReport make_report(const Population& pop, const std::vector<double>& solo, const std::vector<double>& joint) {
  WelfareReport rep;
  rep.uplift_all = true;
  for (std::size_t i = 0; i < pop.size(); ++i) {
    TypeOutcome o{solo[i], joint[i], joint[i] > solo[i] + kUpliftTolerance};
    rep.social_welfare += pop[i].weight() * o.joint;
    if (o.uplifted) {
      rep.uplift_fraction += pop[i].weight();
      ++rep.uplifted_count;
    } else {
      rep.uplift_all = false;
    }
    rep.per_type.push_back(o);
  }
  return rep;
}

WelfareReport verify_uplift(const Population& pop, const AlgorithmPolicy& a) {
  std::vector<double> solo, joint;
  for (const auto& h : pop.types()) {
    solo.push_back(solo_utility(h));
    joint.push_back(joint_utility(h, a));
  }
  return make_report(pop, solo, joint);
}

std::optional<AlgorithmPolicy> top_recovery_strategy(const Population& pop, int k) {
  const int m = pop.items();
  if (k < 1 || k > m) throw DomainError("top_recovery_strategy: k must satisfy 1 <= k <= m");
  ItemSet tops;
  for (const auto& h : pop.types()) {
    if (!h.values().is_top_item_recovery()) throw DomainError("top_recovery_strategy: type is not top-item recovery");
    tops.insert(h.ground_truth().at(0));
  }
  if (tops.size() > std::min(k, m - 1)) return std::nullopt;
  std::vector<Item> order = tops.items();
  for (Item x = 0; x < m && static_cast<int>(order.size()) < k; ++x)
    if (!tops.contains(x)) order.push_back(x);
  for (Item x = 0; x < m; ++x)
    if (!tops.contains(x) && std::find(order.begin(), order.end(), x) == order.end()) order.push_back(x);
  return AlgorithmPolicy::noiseless(Ranking(std::move(order)), k);
}

std::pair<Ranking, Ranking> best_worst_topitem_rankings(int m) {
  if (m < 2) throw DomainError("best_worst_topitem_rankings: m must be at least 2");
  std::vector<Item> best{0}, worst;
  for (Item x = m - 1; x >= 1; --x) best.push_back(x);
  for (Item x = 1; x < m; ++x) worst.push_back(x);
  worst.push_back(0);
  return {Ranking(std::move(best)), Ranking(std::move(worst))};
}

}  // namespace curation
