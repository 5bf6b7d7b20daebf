#include "curation/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "curation/errors.hpp"

namespace curation {

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return std::round(r);
}

Ranking::Ranking(std::vector<Item> order) : order_(std::move(order)) {
  const int m = size();
  if (m < 1) throw DomainError("ranking must contain at least one item");
  if (m > 64) throw DomainError("rankings are limited to 64 items");
  pos_.assign(static_cast<std::size_t>(m), -1);
  for (int p = 0; p < m; ++p) {
    const Item x = order_[static_cast<std::size_t>(p)];
    if (x < 0 || x >= m) throw DomainError("item index out of range in ranking");
    if (pos_[static_cast<std::size_t>(x)] != -1) throw DomainError("duplicate item in ranking");
    pos_[static_cast<std::size_t>(x)] = p;
  }
}

Ranking Ranking::identity(int m) {
  if (m < 1) throw DomainError("ranking must contain at least one item");
  std::vector<Item> v(static_cast<std::size_t>(m));
  std::iota(v.begin(), v.end(), 0);
  return Ranking(std::move(v));
}

Ranking Ranking::from_one_indexed(const std::vector<int>& labels) {
  std::vector<Item> v;
  v.reserve(labels.size());
  for (int l : labels) v.push_back(l - 1);
  return Ranking(std::move(v));
}

ItemSet Ranking::prefix(int k) const {
  ItemSet s;
  for (int p = 0; p < k && p < size(); ++p) s.insert(at(p));
  return s;
}

Ranking Ranking::reversed() const {
  std::vector<Item> v(order_.rbegin(), order_.rend());
  return Ranking(std::move(v));
}

std::vector<int> Ranking::one_indexed() const {
  std::vector<int> v;
  v.reserve(order_.size());
  for (Item x : order_) v.push_back(x + 1);
  return v;
}

std::string Ranking::to_string() const {
  std::string s = "(";
  for (std::size_t p = 0; p < order_.size(); ++p) {
    if (p) s += ' ';
    s += std::to_string(order_[p] + 1);
  }
  return s + ")";
}

int kendall_tau(const Ranking& a, const Ranking& b) {
  if (a.size() != b.size()) throw DimensionError("kendall_tau: rankings differ in length");
  // Inversions of a's order read through b's positions (merge-sort count).
  std::vector<int> seq;
  seq.reserve(static_cast<std::size_t>(a.size()));
  for (Item x : a.order()) seq.push_back(b.position(x));
  std::vector<int> buf(seq.size());
  int count = 0;
  for (std::size_t width = 1; width < seq.size(); width *= 2) {
    for (std::size_t lo = 0; lo < seq.size(); lo += 2 * width) {
      const std::size_t mid = std::min(lo + width, seq.size());
      const std::size_t hi = std::min(lo + 2 * width, seq.size());
      std::size_t i = lo, j = mid, k = lo;
      while (i < mid && j < hi) {
        if (seq[i] <= seq[j]) {
          buf[k++] = seq[i++];
        } else {
          count += static_cast<int>(mid - i);
          buf[k++] = seq[j++];
        }
      }
      while (i < mid) buf[k++] = seq[i++];
      while (j < hi) buf[k++] = seq[j++];
    }
    seq.swap(buf);
  }
  return count;
}

Ranking apply_swap(const Ranking& r, Item i, Item j) {
  if (!r.contains(i) || !r.contains(j)) throw DomainError("apply_swap: unknown item");
  if (i == j) throw DomainError("apply_swap: items must differ");
  std::vector<Item> v = r.order();
  std::swap(v[static_cast<std::size_t>(r.position(i))], v[static_cast<std::size_t>(r.position(j))]);
  return Ranking(std::move(v));
}

ValueProfile::ValueProfile(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw DomainError("value profile must be nonempty");
  for (std::size_t j = 0; j < values_.size(); ++j) {
    if (!(values_[j] >= 0.0) || !std::isfinite(values_[j]))
      throw DomainError("values must be finite and nonnegative");
    if (j > 0 && values_[j] > values_[j - 1]) throw DomainError("values must be non-increasing by rank");
  }
}

bool ValueProfile::is_top_item_recovery() const {
  if (values_.front() <= 0.0) return false;
  return std::all_of(values_.begin() + 1, values_.end(), [](double v) { return v == 0.0; });
}

ValueProfile borda_values(int m) {
  if (m < 1) throw DomainError("borda_values: m must be at least 1");
  std::vector<double> v(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) v[static_cast<std::size_t>(j)] = m - 1 - j;
  return ValueProfile(std::move(v));
}

ValueProfile exponential_values(int m, double beta) {
  if (m < 1) throw DomainError("exponential_values: m must be at least 1");
  std::vector<double> v(static_cast<std::size_t>(m));
  double total = 0.0;
  for (int j = 0; j < m; ++j) total += v[static_cast<std::size_t>(j)] = std::exp(-beta * (j + 1));
  for (double& x : v) x /= total;
  return ValueProfile(std::move(v));
}

}  // namespace curation
