#include "curation/noise_models.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "curation/errors.hpp"

namespace curation {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double log_sum_exp(const std::vector<double>& xs) {
  const double mx = *std::max_element(xs.begin(), xs.end());
  double acc = 0.0;
  for (double x : xs) acc += std::exp(x - mx);
  return mx + std::log(acc);
}

void check_item(int m, Item x) {
  if (x < 0 || x >= m) throw DomainError("item outside the model's universe");
}

}  // namespace

double row_z(int i, double phi) {
  if (i <= 0) return 0.0;
  if (phi == kNoiseless) return 1.0;
  if (phi == 0.0) return static_cast<double>(i);
  return std::expm1(-phi * i) / std::expm1(-phi);
}

double log_row_z(int i, double phi) { return std::log(row_z(i, phi)); }

double log_perm_z(int m, double phi) {
  double acc = 0.0;
  for (int i = 1; i <= m; ++i) acc += log_row_z(i, phi);
  return acc;
}

MallowsModel::MallowsModel(Ranking center, double phi) : center_(std::move(center)), phi_(phi) {
  if (center_.size() < 1) throw DomainError("Mallows model needs a center ranking");
  if (!(phi_ >= 0.0)) throw DomainError("Mallows accuracy must be nonnegative");
}

PlackettLuceModel::PlackettLuceModel(std::vector<double> item_values, double beta)
    : values_(std::move(item_values)), beta_(beta) {
  if (values_.empty()) throw DomainError("Plackett-Luce model needs item values");
  if (!(beta_ > 0.0) || !std::isfinite(beta_)) throw DomainError("Plackett-Luce beta must be positive");
  std::vector<Item> order(values_.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Item a, Item b) {
    return values_[static_cast<std::size_t>(a)] > values_[static_cast<std::size_t>(b)];
  });
  center_ = Ranking(std::move(order));
}

ExplicitModel::ExplicitModel(std::vector<std::pair<Ranking, double>> support) : support_(std::move(support)) {
  if (support_.empty()) throw DomainError("explicit model needs a nonempty support");
  const int m = support_.front().first.size();
  double total = 0.0;
  for (const auto& [r, p] : support_) {
    if (r.size() != m) throw DimensionError("explicit model rankings differ in length");
    if (!(p > 0.0)) throw DomainError("explicit model probabilities must be positive");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) throw DomainError("explicit model probabilities must sum to 1");
  for (auto& entry : support_) entry.second /= total;
}

const Ranking& ExplicitModel::center() const {
  auto it = std::max_element(support_.begin(), support_.end(),
                             [](const auto& a, const auto& b) { return a.second < b.second; });
  return it->first;
}

int model_size(const NoiseModel& model) {
  return std::visit([](const auto& m) { return m.size(); }, model);
}

const Ranking& model_center(const NoiseModel& model) {
  return std::visit([](const auto& m) -> const Ranking& { return m.center(); }, model);
}

InsertionTable::InsertionTable(int m, double phi) : m_(m) {
  if (m < 1) throw DomainError("insertion table needs m >= 1");
  const std::size_t n = static_cast<std::size_t>(m) * static_cast<std::size_t>(m + 1) / 2;
  p_.resize(n);
  gamma_.resize(n);
  for (int t = 1; t <= m; ++t) {
    const double z = row_z(t, phi);
    double acc = 0.0;
    for (int s = 1; s <= t; ++s) {
      double p;
      if (phi == kNoiseless)
        p = (s == t) ? 1.0 : 0.0;
      else
        p = std::exp(-phi * (t - s)) / z;
      p_[offset(t) + static_cast<std::size_t>(s - 1)] = p;
      acc += p;
      gamma_[offset(t) + static_cast<std::size_t>(s - 1)] = (s == t) ? 1.0 : acc;
    }
  }
}

InsertionTable build_insertion_table(const MallowsModel& model) { return InsertionTable(model.size(), model.phi()); }

double mallows_perm_prob(const MallowsModel& model, const Ranking& r) {
  if (r.size() != model.size()) throw DimensionError("mallows_perm_prob: ranking length mismatch");
  const int d = kendall_tau(model.center(), r);
  if (model.is_noiseless()) return d == 0 ? 1.0 : 0.0;
  return std::exp(-model.phi() * d - log_perm_z(model.size(), model.phi()));
}

double mallows_first_item_prob(const MallowsModel& model, Item item) {
  check_item(model.size(), item);
  const int pos = model.center().position(item);
  if (model.is_noiseless()) return pos == 0 ? 1.0 : 0.0;
  return std::exp(-model.phi() * pos) / row_z(model.size(), model.phi());
}

double mallows_pairwise_prob(const MallowsModel& model, Item i, Item j) {
  check_item(model.size(), i);
  check_item(model.size(), j);
  if (i == j) throw DomainError("mallows_pairwise_prob: items must differ");
  const int pi = model.center().position(i);
  const int pj = model.center().position(j);
  if (pi > pj) throw DomainError("mallows_pairwise_prob: first item must precede the second in the center");
  const double phi = model.phi();
  if (phi == kNoiseless) return 1.0;
  const double g = pj - pi + 1;
  // h(g) = g / (1 - exp(-phi g)); the answer is h(g) - h(g - 1).
  if (phi * g < 1e-3) {
    const double g4 = g * g * g * g;
    const double h4 = (g - 1) * (g - 1) * (g - 1) * (g - 1);
    return 0.5 + phi * (2 * g - 1) / 12.0 - phi * phi * phi * (g4 - h4) / 720.0;
  }
  auto h = [phi](double x) { return x / -std::expm1(-phi * x); };
  return h(g) - h(g - 1);
}

double mallows_topk_set_prob(const MallowsModel& model, ItemSet s) {
  const int m = model.size();
  if (s.empty()) throw DomainError("mallows_topk_set_prob: empty set");
  if (s.span() > m) throw DomainError("mallows_topk_set_prob: item outside the universe");
  const int k = s.size();
  if (model.is_noiseless()) return s == model.center().prefix(k) ? 1.0 : 0.0;
  const double phi = model.phi();
  long long pos_sum = 0;
  for (Item x : s.items()) pos_sum += model.center().position(x) + 1;
  double log_p = -phi * static_cast<double>(pos_sum - static_cast<long long>(k) * (k + 1) / 2);
  for (int i = 1; i <= k; ++i) log_p += log_row_z(i, phi) - log_row_z(m - i + 1, phi);
  return std::exp(log_p);
}

Ranking sample_mallows(const MallowsModel& model, Rng& rng) {
  if (model.is_noiseless()) return model.center();
  const int m = model.size();
  const InsertionTable table = build_insertion_table(model);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<Item> partial;
  partial.reserve(static_cast<std::size_t>(m));
  for (int t = 1; t <= m; ++t) {
    const double u = unif(rng);
    int s = t;
    for (int c = 1; c < t; ++c) {
      if (u < table.gamma(t, c)) {
        s = c;
        break;
      }
    }
    partial.insert(partial.begin() + (s - 1), model.center().at(t - 1));
  }
  return Ranking(std::move(partial));
}

double pl_perm_prob(const PlackettLuceModel& model, const Ranking& r) {
  if (r.size() != model.size()) throw DimensionError("pl_perm_prob: ranking length mismatch");
  const int m = model.size();
  double log_p = 0.0;
  std::vector<double> tail;
  tail.reserve(static_cast<std::size_t>(m));
  for (int j = m - 1; j >= 0; --j) {
    tail.push_back(model.item_value(r.at(j)) / model.beta());
    log_p += model.item_value(r.at(j)) / model.beta() - log_sum_exp(tail);
  }
  return std::exp(log_p);
}

Ranking sample_pl(const PlackettLuceModel& model, Rng& rng) {
  const int m = model.size();
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> noisy(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    double u = unif(rng);
    while (u <= 0.0) u = unif(rng);
    noisy[static_cast<std::size_t>(i)] = model.item_value(i) + model.beta() * -std::log(-std::log(u));
  }
  std::vector<Item> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Item a, Item b) {
    return noisy[static_cast<std::size_t>(a)] > noisy[static_cast<std::size_t>(b)];
  });
  return Ranking(std::move(order));
}

double explicit_perm_prob(const ExplicitModel& model, const Ranking& r) {
  if (r.size() != model.size()) throw DimensionError("explicit_perm_prob: ranking length mismatch");
  double p = 0.0;
  for (const auto& [q, w] : model.support())
    if (q == r) p += w;
  return p;
}

Ranking sample_explicit(const ExplicitModel& model, Rng& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double u = unif(rng);
  for (const auto& [r, w] : model.support()) {
    if (u < w) return r;
    u -= w;
  }
  return model.support().back().first;
}

double perm_prob(const NoiseModel& model, const Ranking& r) {
  return std::visit(overloaded{[&](const MallowsModel& m) { return mallows_perm_prob(m, r); },
                               [&](const PlackettLuceModel& m) { return pl_perm_prob(m, r); },
                               [&](const ExplicitModel& m) { return explicit_perm_prob(m, r); }},
                    model);
}

Ranking sample(const NoiseModel& model, Rng& rng) {
  return std::visit(overloaded{[&](const MallowsModel& m) { return sample_mallows(m, rng); },
                               [&](const PlackettLuceModel& m) { return sample_pl(m, rng); },
                               [&](const ExplicitModel& m) { return sample_explicit(m, rng); }},
                    model);
}

namespace {

// Sum over orderings of S of P[the sample starts with that ordering].
double pl_topk_set_prob(const PlackettLuceModel& model, ItemSet s) {
  const int m = model.size();
  std::vector<double> w(static_cast<std::size_t>(m));
  const double shift = *std::max_element(model.item_values().begin(), model.item_values().end());
  for (int i = 0; i < m; ++i) w[static_cast<std::size_t>(i)] = std::exp((model.item_value(i) - shift) / model.beta());
  double total = std::accumulate(w.begin(), w.end(), 0.0);
  std::vector<Item> items = s.items();
  double acc = 0.0;
  do {
    double p = 1.0;
    double remaining = total;
    for (Item x : items) {
      p *= w[static_cast<std::size_t>(x)] / remaining;
      remaining -= w[static_cast<std::size_t>(x)];
    }
    acc += p;
  } while (std::next_permutation(items.begin(), items.end()));
  return acc;
}

}  // namespace

double topk_set_prob(const NoiseModel& model, ItemSet s) {
  if (s.empty()) throw DomainError("topk_set_prob: empty set");
  if (s.span() > model_size(model)) throw DomainError("topk_set_prob: item outside the universe");
  return std::visit(overloaded{[&](const MallowsModel& m) { return mallows_topk_set_prob(m, s); },
                               [&](const PlackettLuceModel& m) { return pl_topk_set_prob(m, s); },
                               [&](const ExplicitModel& m) {
                                 double p = 0.0;
                                 for (const auto& [r, w] : m.support())
                                   if (r.prefix(s.size()) == s) p += w;
                                 return p;
                               }},
                    model);
}

void for_each_permutation(int m, const std::function<void(const Ranking&)>& f) {
  std::vector<Item> v(static_cast<std::size_t>(m));
  std::iota(v.begin(), v.end(), 0);
  do {
    f(Ranking(v));
  } while (std::next_permutation(v.begin(), v.end()));
}

double enumerate_event_prob(const NoiseModel& model, const std::function<bool(const Ranking&)>& pred, int cap) {
  if (const auto* ex = std::get_if<ExplicitModel>(&model)) {
    double p = 0.0;
    for (const auto& [r, w] : ex->support())
      if (pred(r)) p += w;
    return p;
  }
  const int m = model_size(model);
  if (m > cap) throw CapacityError("enumerate_event_prob: m exceeds the enumeration cap");
  double p = 0.0;
  for_each_permutation(m, [&](const Ranking& r) {
    if (pred(r)) p += perm_prob(model, r);
  });
  return p;
}

}  // namespace curation
