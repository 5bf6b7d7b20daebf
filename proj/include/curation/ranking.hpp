#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "curation/item_set.hpp"

namespace curation {

/// A strict total order over items 0..m-1, stored most-preferred first.
class Ranking {
 public:
  Ranking() = default;
  /// Throws DomainError unless `order` is a permutation of 0..m-1 with m >= 1.
  explicit Ranking(std::vector<Item> order);

  static Ranking identity(int m);
  /// Builds from 1-indexed item labels, as used in files and on the command line.
  static Ranking from_one_indexed(const std::vector<int>& labels);

  int size() const { return static_cast<int>(order_.size()); }
  /// Item at 0-based position `pos`.
  Item at(int pos) const { return order_[static_cast<std::size_t>(pos)]; }
  Item operator[](int pos) const { return at(pos); }
  /// 0-based position of item `x`.
  int position(Item x) const { return pos_[static_cast<std::size_t>(x)]; }
  bool contains(Item x) const { return x >= 0 && x < size(); }
  bool prefers(Item a, Item b) const { return position(a) < position(b); }

  const std::vector<Item>& order() const { return order_; }
  /// Unordered set of the first k items.
  ItemSet prefix(int k) const;
  Ranking reversed() const;

  std::vector<int> one_indexed() const;
  /// "(1 2 3)" in 1-indexed labels.
  std::string to_string() const;

  bool operator==(const Ranking& o) const { return order_ == o.order_; }
  bool operator<(const Ranking& o) const { return order_ < o.order_; }

 private:
  std::vector<Item> order_;
  std::vector<int> pos_;
};

/// Number of item pairs ordered differently by a and b.
int kendall_tau(const Ranking& a, const Ranking& b);

/// Exchanges the positions of items i and j.
Ranking apply_swap(const Ranking& r, Item i, Item j);

/// Non-increasing nonnegative values indexed by rank position (0 = most preferred).
class ValueProfile {
 public:
  ValueProfile() = default;
  explicit ValueProfile(std::vector<double> values);

  int size() const { return static_cast<int>(values_.size()); }
  double at(int pos) const { return values_[static_cast<std::size_t>(pos)]; }
  double operator[](int pos) const { return at(pos); }
  const std::vector<double>& values() const { return values_; }
  double top() const { return values_.front(); }
  /// True when only the first position carries positive value.
  bool is_top_item_recovery() const;

 private:
  std::vector<double> values_;
};

/// (m-1, m-2, ..., 0)
ValueProfile borda_values(int m);

/// v_j proportional to exp(-beta * j), j = 1..m, normalised to sum to one.
ValueProfile exponential_values(int m, double beta);

}  // namespace curation
