#pragma once

#include "curation/choice.hpp"
#include "curation/population.hpp"

namespace curation {

/// Distribution of the item a human picks alone from all m items.
PickDistribution solo_pick_dist(const HumanType& h);

/// Exact distribution of the jointly chosen item: the algorithm draws a k-menu and
/// the human picks the first menu item in her own sampled ranking.
/// Throws CapacityError when the menu space is too large; use mc_joint_pick_dist.
PickDistribution joint_pick_dist(const HumanType& h, const AlgorithmPolicy& a);

/// Pick distribution when the human is shown the fixed menu S.
PickDistribution menu_pick_dist(const HumanType& h, ItemSet s);

/// Monte Carlo estimate of joint_pick_dist from `samples` independent rounds.
PickDistribution mc_joint_pick_dist(const HumanType& h, const AlgorithmPolicy& a, long samples, Rng& rng);

/// Sum over items of P[x] times the human's value for x.
double expected_utility(const PickDistribution& d, const HumanType& h);

double solo_utility(const HumanType& h);
double joint_utility(const HumanType& h, const AlgorithmPolicy& a);
double menu_utility(const HumanType& h, ItemSet s);

}  // namespace curation
