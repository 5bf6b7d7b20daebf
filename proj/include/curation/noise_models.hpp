#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <utility>
#include <variant>
#include <vector>

#include "curation/item_set.hpp"
#include "curation/ranking.hpp"

namespace curation {

/// Accuracy value that turns a Mallows model into a point mass on its center.
inline constexpr double kNoiseless = std::numeric_limits<double>::infinity();

/// Default bound on m for full-permutation enumeration.
inline constexpr int kDefaultEnumerationCap = 7;

using Rng = std::mt19937_64;

// Mallows normalisers. row_z(i, phi) = sum_{t=0}^{i-1} exp(-phi t); the full
// permutation normaliser over m items is perm_z(m, phi) = prod_{i=1}^{m} row_z(i, phi).
double row_z(int i, double phi);
double log_row_z(int i, double phi);
double log_perm_z(int m, double phi);

/// Mallows distribution: P[r] proportional to exp(-phi * kendall_tau(center, r)).
/// phi = 0 is the uniform distribution, phi = kNoiseless a point mass on the center.
class MallowsModel {
 public:
  MallowsModel(Ranking center, double phi);

  const Ranking& center() const { return center_; }
  double phi() const { return phi_; }
  int size() const { return center_.size(); }
  bool is_noiseless() const { return phi_ == kNoiseless; }

 private:
  Ranking center_;
  double phi_;
};

/// Plackett-Luce model: items sorted by value + Gumbel(0, beta) noise.
class PlackettLuceModel {
 public:
  PlackettLuceModel(std::vector<double> item_values, double beta);

  const std::vector<double>& item_values() const { return values_; }
  double item_value(Item x) const { return values_[static_cast<std::size_t>(x)]; }
  double beta() const { return beta_; }
  /// Items by descending value; equal values ordered by ascending index.
  const Ranking& center() const { return center_; }
  int size() const { return center_.size(); }

 private:
  std::vector<double> values_;
  double beta_;
  Ranking center_;
};

/// Finite distribution given by an explicit list of (ranking, probability) pairs.
class ExplicitModel {
 public:
  explicit ExplicitModel(std::vector<std::pair<Ranking, double>> support);

  const std::vector<std::pair<Ranking, double>>& support() const { return support_; }
  int size() const { return support_.front().first.size(); }
  /// Most probable ranking (first listed on ties).
  const Ranking& center() const;

 private:
  std::vector<std::pair<Ranking, double>> support_;
};

using NoiseModel = std::variant<MallowsModel, PlackettLuceModel, ExplicitModel>;

int model_size(const NoiseModel& model);
const Ranking& model_center(const NoiseModel& model);

/// Repeated-insertion constants: p(t, s) is the probability of inserting the t-th
/// center item at position s of the partial ranking (1 <= s <= t), and
/// gamma(t, s) = sum_{l <= s} p(t, l). Indices are 1-based as in the recurrence.
class InsertionTable {
 public:
  InsertionTable(int m, double phi);

  int size() const { return m_; }
  double p(int t, int s) const { return p_[offset(t) + static_cast<std::size_t>(s - 1)]; }
  /// gamma(t, 0) is 0 by convention.
  double gamma(int t, int s) const {
    return s <= 0 ? 0.0 : gamma_[offset(t) + static_cast<std::size_t>(s - 1)];
  }

 private:
  static std::size_t offset(int t) { return static_cast<std::size_t>(t) * static_cast<std::size_t>(t - 1) / 2; }

  int m_;
  std::vector<double> p_;
  std::vector<double> gamma_;
};

double mallows_perm_prob(const MallowsModel& model, const Ranking& r);
/// Probability that `item` is ranked first.
double mallows_first_item_prob(const MallowsModel& model, Item item);
/// Probability that i precedes j; i must precede j in the center.
double mallows_pairwise_prob(const MallowsModel& model, Item i, Item j);
/// Probability that the first |S| items of a sample are exactly S.
double mallows_topk_set_prob(const MallowsModel& model, ItemSet s);
InsertionTable build_insertion_table(const MallowsModel& model);
Ranking sample_mallows(const MallowsModel& model, Rng& rng);

double pl_perm_prob(const PlackettLuceModel& model, const Ranking& r);
Ranking sample_pl(const PlackettLuceModel& model, Rng& rng);

double explicit_perm_prob(const ExplicitModel& model, const Ranking& r);
Ranking sample_explicit(const ExplicitModel& model, Rng& rng);

double perm_prob(const NoiseModel& model, const Ranking& r);
Ranking sample(const NoiseModel& model, Rng& rng);
/// Probability that the top-|S| items form the set S, for any model kind.
double topk_set_prob(const NoiseModel& model, ItemSet s);

/// Calls f(r) for every permutation of 0..m-1 in lexicographic order.
void for_each_permutation(int m, const std::function<void(const Ranking&)>& f);

/// Exact probability of the event {r : pred(r)} by summing over every ranking in
/// the support. Mallows and Plackett-Luce models enumerate all m! rankings and
/// throw CapacityError when m exceeds `cap`.
double enumerate_event_prob(const NoiseModel& model, const std::function<bool(const Ranking&)>& pred,
                            int cap = kDefaultEnumerationCap);

}  // namespace curation
