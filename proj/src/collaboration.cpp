#include "curation/collaboration.hpp"

#include "curation/errors.hpp"

namespace curation {

namespace {

void check_sizes(const HumanType& h, const AlgorithmPolicy& a) {
  if (h.size() != a.size()) throw DimensionError("human and algorithm differ in item count");
}

}  // namespace

PickDistribution solo_pick_dist(const HumanType& h) { return choice_dist(h.noise(), ItemSet::universe(h.size())); }

PickDistribution menu_pick_dist(const HumanType& h, ItemSet s) { return choice_dist(h.noise(), s); }

PickDistribution joint_pick_dist(const HumanType& h, const AlgorithmPolicy& a) {
  check_sizes(h, a);
  PickDistribution out(h.size());
  for (const auto& [menu, p] : menu_distribution(a)) {
    const PickDistribution d = choice_dist(h.noise(), menu);
    for (Item x : menu.items()) out[x] += p * d[x];
  }
  return out;
}

PickDistribution mc_joint_pick_dist(const HumanType& h, const AlgorithmPolicy& a, long samples, Rng& rng) {
  check_sizes(h, a);
  if (samples < 1) throw DomainError("mc_joint_pick_dist: need at least one sample");
  std::vector<long> counts(static_cast<std::size_t>(h.size()), 0);
  for (long n = 0; n < samples; ++n) {
    const ItemSet menu = sample(a.model(), rng).prefix(a.k());
    const Ranking r = sample(h.noise(), rng);
    for (Item x : r.order()) {
      if (menu.contains(x)) {
        ++counts[static_cast<std::size_t>(x)];
        break;
      }
    }
  }
  PickDistribution out(h.size());
  for (int x = 0; x < h.size(); ++x)
    out[x] = static_cast<double>(counts[static_cast<std::size_t>(x)]) / static_cast<double>(samples);
  return out;
}

double expected_utility(const PickDistribution& d, const HumanType& h) {
  if (d.size() != h.size()) throw DimensionError("expected_utility: distribution size mismatch");
  double u = 0.0;
  for (int x = 0; x < d.size(); ++x) u += d[x] * h.utility(x);
  return u;
}

double solo_utility(const HumanType& h) { return expected_utility(solo_pick_dist(h), h); }

double joint_utility(const HumanType& h, const AlgorithmPolicy& a) {
  return expected_utility(joint_pick_dist(h, a), h);
}

double menu_utility(const HumanType& h, ItemSet s) { return expected_utility(menu_pick_dist(h, s), h); }

}  // namespace curation
