#include "curation/choice.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "curation/errors.hpp"

namespace curation {

double PickDistribution::total() const { return std::accumulate(probs.begin(), probs.end(), 0.0); }

ItemSet PickDistribution::support() const {
  ItemSet s;
  for (int x = 0; x < size(); ++x)
    if ((*this)[x] > 0.0) s.insert(x);
  return s;
}

namespace {

void check_menu(int m, ItemSet s) {
  if (s.empty()) throw DomainError("choice: empty item set");
  if (s.span() > m) throw DomainError("choice: item outside the model's universe");
}

}  // namespace

PickDistribution choice_dist_mallows(const MallowsModel& model, ItemSet s) {
  const int m = model.size();
  check_menu(m, s);
  if (s.size() == 1) {
    PickDistribution only(m);
    only[s.items().front()] = 1.0;
    return only;
  }
  const InsertionTable table = build_insertion_table(model);
  const Ranking& center = model.center();

  // w[c][pos]: P[the c-th S item (in center order) is currently first among the
  // inserted S items and sits at position pos]. Rolled over insertion steps.
  const int n = s.size();
  const std::size_t stride = static_cast<std::size_t>(m) + 2;
  std::vector<double> w(static_cast<std::size_t>(n) * stride, 0.0);
  std::vector<double> next(w.size(), 0.0);
  std::vector<double> suffix(stride, 0.0);
  std::vector<Item> slot_item;
  slot_item.reserve(static_cast<std::size_t>(n));
  double q = 1.0;  // P[no S item inserted yet]

  auto at = [stride](std::vector<double>& v, int c, int pos) -> double& {
    return v[static_cast<std::size_t>(c) * stride + static_cast<std::size_t>(pos)];
  };

  for (int t = 1; t <= m; ++t) {
    const Item x = center.at(t - 1);
    const bool in_s = s.contains(x);
    const int filled = static_cast<int>(slot_item.size());
    for (int c = 0; c < filled; ++c) {
      for (int pos = 1; pos <= t; ++pos) {
        double v = (1.0 - table.gamma(t, pos)) * at(w, c, pos);
        if (!in_s) v += table.gamma(t, pos - 1) * at(w, c, pos - 1);
        at(next, c, pos) = v;
      }
    }
    if (in_s) {
      std::fill(suffix.begin(), suffix.end(), 0.0);
      for (int pos = t - 1; pos >= 1; --pos) {
        double col = 0.0;
        for (int c = 0; c < filled; ++c) col += at(w, c, pos);
        suffix[static_cast<std::size_t>(pos)] = suffix[static_cast<std::size_t>(pos) + 1] + col;
      }
      for (int pos = 1; pos <= t; ++pos)
        at(next, filled, pos) = table.p(t, pos) * (suffix[static_cast<std::size_t>(pos)] + q);
      slot_item.push_back(x);
      q = 0.0;
    }
    w.swap(next);
  }

  PickDistribution d(m);
  for (int c = 0; c < n; ++c) {
    double acc = 0.0;
    for (int pos = 1; pos <= m; ++pos) acc += at(w, c, pos);
    d[slot_item[static_cast<std::size_t>(c)]] = std::clamp(acc, 0.0, 1.0);
  }
  return d;
}

double choice_prob_mallows(const MallowsModel& model, ItemSet s, Item target) {
  check_menu(model.size(), s);
  if (target < 0 || !s.contains(target)) throw DomainError("choice_prob_mallows: target not in the item set");
  return choice_dist_mallows(model, s)[target];
}

double choice_prob_pl(const PlackettLuceModel& model, ItemSet s, Item target) {
  check_menu(model.size(), s);
  if (target < 0 || !s.contains(target)) throw DomainError("choice_prob_pl: target not in the item set");
  double mx = -std::numeric_limits<double>::infinity();
  for (Item x : s.items()) mx = std::max(mx, model.item_value(x));
  double denom = 0.0;
  for (Item x : s.items()) denom += std::exp((model.item_value(x) - mx) / model.beta());
  return std::exp((model.item_value(target) - mx) / model.beta()) / denom;
}

PickDistribution choice_dist(const NoiseModel& model, ItemSet s) {
  const int m = model_size(model);
  check_menu(m, s);
  if (const auto* mm = std::get_if<MallowsModel>(&model)) return choice_dist_mallows(*mm, s);
  PickDistribution d(m);
  if (const auto* pl = std::get_if<PlackettLuceModel>(&model)) {
    for (Item x : s.items()) d[x] = choice_prob_pl(*pl, s, x);
    return d;
  }
  for (const auto& [r, p] : std::get<ExplicitModel>(model).support()) {
    for (Item x : r.order()) {
      if (s.contains(x)) {
        d[x] += p;
        break;
      }
    }
  }
  return d;
}

}  // namespace curation
