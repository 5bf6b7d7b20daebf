#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace curation {

using Item = int;

/// Unordered set of items over a universe of at most 64 items, stored as a bitmask.
class ItemSet {
 public:
  constexpr ItemSet() = default;
  constexpr explicit ItemSet(std::uint64_t bits) : bits_(bits) {}
  ItemSet(std::initializer_list<Item> items) {
    for (Item x : items) insert(x);
  }

  static ItemSet from_items(const std::vector<Item>& items) {
    ItemSet s;
    for (Item x : items) s.insert(x);
    return s;
  }
  /// {0, ..., m-1}
  static constexpr ItemSet universe(int m) {
    return ItemSet(m >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << m) - 1));
  }

  constexpr bool contains(Item x) const { return (bits_ >> x) & 1U; }
  constexpr void insert(Item x) { bits_ |= std::uint64_t{1} << x; }
  constexpr void erase(Item x) { bits_ &= ~(std::uint64_t{1} << x); }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::uint64_t bits() const { return bits_; }

  /// Items in ascending order.
  std::vector<Item> items() const {
    std::vector<Item> out;
    out.reserve(static_cast<std::size_t>(size()));
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b));
    return out;
  }

  /// Largest item index + 1, i.e. the smallest universe that holds the set.
  constexpr int span() const { return 64 - std::countl_zero(bits_); }

  constexpr ItemSet operator|(ItemSet o) const { return ItemSet(bits_ | o.bits_); }
  constexpr ItemSet operator&(ItemSet o) const { return ItemSet(bits_ & o.bits_); }
  constexpr bool operator==(const ItemSet&) const = default;

  /// Lexicographic comparison of the ascending item lists.
  bool lex_less(ItemSet o) const {
    const auto a = items();
    const auto b = o.items();
    return a < b;
  }

 private:
  std::uint64_t bits_ = 0;
};

/// Calls f(ItemSet) for every k-subset of {0..m-1}, in lexicographic order of the item lists.
template <typename F>
void for_each_subset(int m, int k, F&& f) {
  if (k < 0 || k > m) return;
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  while (true) {
    ItemSet s;
    for (int x : idx) s.insert(x);
    f(s);
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == m - k + i) --i;
    if (i < 0) return;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

/// Binomial coefficient as double (saturates gracefully for large arguments).
double binomial(int n, int k);

}  // namespace curation
