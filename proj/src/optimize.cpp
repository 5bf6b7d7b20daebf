#include "curation/optimize.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>

#include "curation/errors.hpp"

namespace curation {

namespace {

constexpr double kImprove = 1e-12;

// Per-type menu utilities with memoisation keyed by the menu bitmask.
class MenuEvaluator {
 public:
  explicit MenuEvaluator(const Population& pop) : pop_(pop), memo_(pop.size()) {}

  double type_utility(std::size_t i, ItemSet s) {
    auto& memo = memo_[i];
    auto it = memo.find(s.bits());
    if (it != memo.end()) return it->second;
    ++evaluations;
    const double u = menu_utility(pop_[i], s);
    memo.emplace(s.bits(), u);
    return u;
  }

  std::vector<double> per_type(ItemSet s) {
    std::vector<double> u(pop_.size());
    for (std::size_t i = 0; i < pop_.size(); ++i) u[i] = type_utility(i, s);
    return u;
  }

  double welfare(ItemSet s) {
    double w = 0.0;
    for (std::size_t i = 0; i < pop_.size(); ++i) w += pop_[i].weight() * type_utility(i, s);
    return w;
  }

  long evaluations = 0;

 private:
  const Population& pop_;
  std::vector<std::unordered_map<std::uint64_t, double>> memo_;
};

void check_k(const Population& pop, int k) {
  if (k < 1 || k > pop.items()) throw DomainError("menu size must satisfy 1 <= k <= m");
}

void check_enumerable(const Population& pop, int k) {
  check_k(pop, k);
  if (binomial(pop.items(), k) > kMenuEnumerationCap) throw CapacityError("too many menus to enumerate");
}

}  // namespace

AlgorithmPolicy menu_policy(ItemSet menu, int m) {
  std::vector<Item> order = menu.items();
  for (Item x = 0; x < m; ++x)
    if (!menu.contains(x)) order.push_back(x);
  return AlgorithmPolicy::noiseless(Ranking(std::move(order)), menu.size());
}

AlgorithmPolicy OptimizeResult::policy(int m) const { return menu_policy(menu, m); }

OptimizeResult enumerate_best_menu(const Population& pop, int k) {
  check_enumerable(pop, k);
  MenuEvaluator eval(pop);
  OptimizeResult best;
  best.method = "enumeration";
  best.welfare = -std::numeric_limits<double>::infinity();
  for_each_subset(pop.items(), k, [&](ItemSet s) {
    ++best.nodes;
    const double w = eval.welfare(s);
    if (w > best.welfare + kImprove) {
      best.welfare = w;
      best.menu = s;
    }
  });
  best.per_type = eval.per_type(best.menu);
  best.evaluations = eval.evaluations;
  return best;
}

namespace {

class BranchAndBound {
 public:
  BranchAndBound(const Population& pop, int k) : pop_(pop), eval_(pop), m_(pop.items()), k_(k) {
    values_.resize(pop.size());
    for (std::size_t i = 0; i < pop.size(); ++i)
      for (Item x = 0; x < m_; ++x) values_[i].push_back(pop[i].utility(x));
  }

  OptimizeResult run() {
    best_.method = "branch-and-bound";
    best_.welfare = -std::numeric_limits<double>::infinity();
    dfs(0, ItemSet{});
    best_.per_type = eval_.per_type(best_.menu);
    best_.evaluations = eval_.evaluations;
    return best_;
  }

 private:
  // Completions of `fixed` by `need` items from {from, ..., m-1}, in lexicographic order.
  template <typename F>
  void for_each_completion(ItemSet fixed, int from, int need, F&& f) {
    if (need == 0) {
      f(fixed);
      return;
    }
    for (Item x = from; x <= m_ - need; ++x) {
      ItemSet s = fixed;
      s.insert(x);
      for_each_completion(s, x + 1, need - 1, f);
    }
  }

  // Each type independently takes its best completion of the partial menu.
  double bound(int depth, ItemSet in) {
    const int need = k_ - in.size();
    const double completions = binomial(m_ - depth, need);
    double total = 0.0;
    for (std::size_t i = 0; i < pop_.size(); ++i) {
      double b = 0.0;
      if (completions <= kExactCompletions) {
        for_each_completion(in, depth, need, [&](ItemSet s) { b = std::max(b, eval_.type_utility(i, s)); });
      } else {
        for (Item x : in.items()) b = std::max(b, values_[i][static_cast<std::size_t>(x)]);
        for (Item x = depth; x < m_; ++x) b = std::max(b, values_[i][static_cast<std::size_t>(x)]);
      }
      total += pop_[i].weight() * b;
    }
    return total;
  }

  void dfs(int depth, ItemSet in) {
    ++best_.nodes;
    const int need = k_ - in.size();
    if (need == 0) {
      const double w = eval_.welfare(in);
      if (w > best_.welfare + kImprove) {
        best_.welfare = w;
        best_.menu = in;
      }
      return;
    }
    if (m_ - depth < need) return;
    if (bound(depth, in) <= best_.welfare + kImprove) return;
    ItemSet with = in;
    with.insert(depth);
    dfs(depth + 1, with);
    dfs(depth + 1, in);
  }

  static constexpr double kExactCompletions = 16;

  const Population& pop_;
  MenuEvaluator eval_;
  int m_;
  int k_;
  std::vector<std::vector<double>> values_;
  OptimizeResult best_;
};

}  // namespace

OptimizeResult branch_and_bound_menu(const Population& pop, int k) {
  check_k(pop, k);
  if (pop.items() > 40) throw CapacityError("branch_and_bound_menu supports m <= 40");
  return BranchAndBound(pop, k).run();
}

std::optional<OptimizeResult> optimize_with_uplift(const Population& pop, int k) {
  check_enumerable(pop, k);
  std::vector<double> solo;
  for (const auto& h : pop.types()) solo.push_back(solo_utility(h));
  MenuEvaluator eval(pop);
  std::optional<OptimizeResult> best;
  long nodes = 0;
  for_each_subset(pop.items(), k, [&](ItemSet s) {
    ++nodes;
    for (std::size_t i = 0; i < pop.size(); ++i)
      if (!(eval.type_utility(i, s) > solo[i] + kUpliftTolerance)) return;
    const double w = eval.welfare(s);
    if (!best || w > best->welfare + kImprove) {
      best = OptimizeResult{};
      best->menu = s;
      best->welfare = w;
    }
  });
  if (!best) return std::nullopt;
  best->method = "enumeration";
  best->per_type = eval.per_type(best->menu);
  best->nodes = nodes;
  best->evaluations = eval.evaluations;
  return best;
}

NoisyUpliftResult noisy_uplift_search(const Population& pop, const Ranking& center, const std::vector<double>& phi_grid,
                                      int k) {
  if (phi_grid.empty()) throw DomainError("noisy_uplift_search: empty accuracy grid");
  if (center.size() != pop.items()) throw DimensionError("noisy_uplift_search: center size mismatch");
  std::vector<double> solo;
  for (const auto& h : pop.types()) solo.push_back(solo_utility(h));
  NoisyUpliftResult out;
  bool first = true;
  for (double phi : phi_grid) {
    const AlgorithmPolicy a =
        phi == kNoiseless ? AlgorithmPolicy::noiseless(center, k) : AlgorithmPolicy::mallows(center, phi, k);
    std::vector<double> joint;
    for (const auto& h : pop.types()) joint.push_back(joint_utility(h, a));
    NoisyUpliftPoint pt{phi, make_report(pop, solo, joint), std::numeric_limits<double>::infinity()};
    for (std::size_t i = 0; i < pop.size(); ++i) pt.min_gain = std::min(pt.min_gain, joint[i] - solo[i]);
    if (first || pt.min_gain > out.best_min_gain) {
      out.best_phi = phi;
      out.best_report = pt.report;
      out.best_min_gain = pt.min_gain;
      first = false;
    }
    out.points.push_back(std::move(pt));
  }
  return out;
}

}  // namespace curation
