#include <doctest.h>

#include <cmath>

#include "curation/collaboration.hpp"
#include "curation/errors.hpp"
#include "oracle.hpp"

using namespace curation;

namespace {
const double kLn2 = std::log(2.0);
const Ranking id3 = Ranking::identity(3);

ExplicitModel fig1_model() {
  return ExplicitModel({{Ranking::from_one_indexed({1, 2, 3}), 0.9}, {Ranking::from_one_indexed({2, 1, 3}), 0.1}});
}
}  // namespace

TEST_CASE("mallows choice dynamic program") {
  const MallowsModel m(id3, kLn2);
  CHECK(choice_prob_mallows(m, ItemSet{0, 2}, 0) == doctest::Approx(16.0 / 21).epsilon(1e-14));
  CHECK(choice_prob_mallows(m, ItemSet{1}, 1) == doctest::Approx(1.0));
  for (Item x = 0; x < 3; ++x)
    CHECK(choice_prob_mallows(m, ItemSet::universe(3), x) == doctest::Approx(mallows_first_item_prob(m, x)));
  CHECK_THROWS_AS(choice_prob_mallows(m, ItemSet{0, 2}, 1), DomainError);
  CHECK_THROWS_AS(choice_prob_mallows(m, ItemSet{}, 1), DomainError);
  const auto d = choice_dist(m, ItemSet{0, 2});
  CHECK(d[0] == doctest::Approx(16.0 / 21));
  CHECK(d[2] == doctest::Approx(5.0 / 21));
  CHECK(d[1] == 0.0);
}

TEST_CASE("choice dynamic program under a non-identity center") {
  const Ranking c = Ranking::from_one_indexed({3, 1, 4, 2, 5});
  const MallowsModel m(c, 0.8);
  const auto dist = oracle::mallows_dist(c.order(), 0.8);
  const std::vector<int> s{0, 1, 4};
  const auto d = choice_dist_mallows(m, ItemSet::from_items(s));
  for (int x : s) CHECK(d[x] == doctest::Approx(oracle::first_among_prob(5, dist, s, x)).epsilon(1e-12));
}

TEST_CASE("plackett-luce choice") {
  const PlackettLuceModel m({1.0, 0.0, -1.0}, 1.0);
  const double e = std::exp(1.0);
  CHECK(choice_prob_pl(m, ItemSet::universe(3), 0) == doctest::Approx(e / (e + 1 + 1 / e)));
  CHECK(choice_prob_pl(PlackettLuceModel({0.5, 0.5}, 2.0), ItemSet{0, 1}, 1) == doctest::Approx(0.5));
  CHECK(choice_prob_pl(PlackettLuceModel({1.0, 0.0, -1.0}, 1e-3), ItemSet{1, 2}, 1) == doctest::Approx(1.0));
  CHECK_THROWS_AS(choice_prob_pl(m, ItemSet{0, 1}, 2), DomainError);
}

TEST_CASE("explicit choice distribution") {
  const NoiseModel model = fig1_model();
  const auto d = choice_dist(model, ItemSet{0, 2});
  CHECK(d[0] == doctest::Approx(1.0));
  CHECK(d[2] == 0.0);
  const auto single = choice_dist(model, ItemSet{2});
  CHECK(single[2] == 1.0);
}

TEST_CASE("solo and joint pick distributions") {
  const ValueProfile top({1.0, 0.0, 0.0});
  const HumanType h = HumanType::mallows(id3, kLn2, top);
  const auto solo = solo_pick_dist(h);
  CHECK(solo[0] == doctest::Approx(4.0 / 7));
  CHECK(solo[1] == doctest::Approx(2.0 / 7));
  CHECK(solo[2] == doctest::Approx(1.0 / 7));
  CHECK(expected_utility(solo, h) == doctest::Approx(4.0 / 7));

  const auto a = AlgorithmPolicy::mallows(id3, kLn2, 2);
  const auto joint = joint_pick_dist(h, a);
  CHECK(joint[0] == doctest::Approx(88.0 / 147).epsilon(1e-14));
  CHECK(joint.total() == doctest::Approx(1.0));
  CHECK(expected_utility(joint, h) > expected_utility(solo, h));

  const auto full = joint_pick_dist(h, AlgorithmPolicy::mallows(id3, 0.9, 3));
  for (Item x = 0; x < 3; ++x) CHECK(full[x] == doctest::Approx(solo[x]));

  const HumanType sharp = HumanType::mallows(id3, kNoiseless, top);
  CHECK(solo_pick_dist(sharp)[0] == 1.0);
  const HumanType zero = HumanType::mallows(id3, 1.0, ValueProfile({0.0, 0.0, 0.0}));
  CHECK(expected_utility(joint_pick_dist(zero, a), zero) == 0.0);
}

TEST_CASE("figure-one explicit human with a noiseless menu") {
  const HumanType h(Ranking::from_one_indexed({1, 2, 3}), fig1_model(), ValueProfile({1.0, 0.0, 0.0}));
  CHECK(solo_pick_dist(h)[0] == doctest::Approx(0.9));
  const auto a = AlgorithmPolicy::noiseless(Ranking::from_one_indexed({1, 3, 2}), 2);
  CHECK(joint_pick_dist(h, a)[0] == doctest::Approx(1.0));
}

TEST_CASE("joint pick matches double enumeration") {
  const Ranking hc = Ranking::from_one_indexed({2, 1, 4, 3, 5});
  const Ranking ac = Ranking::from_one_indexed({1, 2, 5, 3, 4});
  const HumanType h = HumanType::mallows(hc, 0.7, borda_values(5));
  const auto hd = oracle::mallows_dist(hc.order(), 0.7);
  const auto ad = oracle::mallows_dist(ac.order(), 1.3);
  for (int k = 1; k <= 5; ++k) {
    const auto exact = joint_pick_dist(h, AlgorithmPolicy::mallows(ac, 1.3, k));
    const auto ref = oracle::joint_pick(5, ad, k, hd);
    for (Item x = 0; x < 5; ++x) CHECK(std::abs(exact[x] - ref[static_cast<std::size_t>(x)]) <= 1e-10);
  }
}

TEST_CASE("monte carlo joint pick") {
  const HumanType h = HumanType::mallows(id3, kLn2, ValueProfile({1.0, 0.0, 0.0}));
  const auto a = AlgorithmPolicy::mallows(id3, kLn2, 2);
  Rng rng(2024);
  const long n = 100000;
  const auto est = mc_joint_pick_dist(h, a, n, rng);
  const double p = 88.0 / 147;
  CHECK(std::abs(est[0] - p) < 3 * std::sqrt(p * (1 - p) / n));
  Rng r1(9), r2(9);
  CHECK(mc_joint_pick_dist(h, a, 500, r1).probs == mc_joint_pick_dist(h, a, 500, r2).probs);
  const HumanType sharp = HumanType::mallows(id3, kNoiseless, ValueProfile({1.0, 0.0, 0.0}));
  const auto fixed = mc_joint_pick_dist(sharp, AlgorithmPolicy::noiseless(Ranking::from_one_indexed({2, 3, 1}), 2), 200, rng);
  CHECK(fixed[1] == 1.0);
  CHECK_THROWS_AS(mc_joint_pick_dist(h, a, 0, rng), DomainError);
}

TEST_CASE("policy and population validation") {
  CHECK_THROWS_AS(AlgorithmPolicy::noiseless(id3, 0), DomainError);
  CHECK_THROWS_AS(AlgorithmPolicy::noiseless(id3, 4), DomainError);
  CHECK_THROWS_AS(AlgorithmPolicy::mallows(id3, 0.0, 2), DomainError);
  CHECK_THROWS_AS(HumanType(id3, MallowsModel(id3.reversed(), 1.0), borda_values(3)), DomainError);
  const auto h = HumanType::mallows(id3, 1.0, borda_values(3), 0.5);
  CHECK_THROWS_AS(Population({h}), DomainError);
  const Population ok({h, h.with_weight(0.5 + 5e-10)});
  CHECK(ok.renormalized());
  CHECK_THROWS_AS(Population({h, HumanType::mallows(Ranking::identity(4), 1.0, borda_values(4), 0.5)}),
                  DimensionError);
  CHECK_THROWS_AS(Population(std::vector<HumanType>{}), DomainError);

  // Plackett-Luce humans: tied values may sit in any order along the ground truth.
  const Ranking tail_swapped = Ranking::from_one_indexed({2, 1, 3, 5, 4});
  const ValueProfile top5({1.0, 0.0, 0.0, 0.0, 0.0});
  const auto tied = HumanType::plackett_luce(tail_swapped, 1.0, top5);
  CHECK(solo_pick_dist(tied)[1] > solo_pick_dist(tied)[0]);
  CHECK(solo_pick_dist(tied)[3] == doctest::Approx(solo_pick_dist(tied)[4]).epsilon(1e-15));
  CHECK_THROWS_AS(HumanType(tail_swapped, PlackettLuceModel({1.0, 0.0, 0.0, 0.0, 0.0}, 1.0), top5), DomainError);
}
