#include "curation/population.hpp"

#include <algorithm>
#include <cmath>

#include "curation/errors.hpp"

namespace curation {

HumanType::HumanType(Ranking ground_truth, NoiseModel noise, ValueProfile values, double weight)
    : ground_truth_(std::move(ground_truth)), noise_(std::move(noise)), values_(std::move(values)), weight_(weight) {
  if (model_size(noise_) != ground_truth_.size() || values_.size() != ground_truth_.size())
    throw DimensionError("human type: ground truth, model and values differ in size");
  if (!(weight_ > 0.0 && weight_ <= 1.0 + 1e-9)) throw DomainError("human type weight must lie in (0, 1]");
  if (const auto* pl = std::get_if<PlackettLuceModel>(&noise_)) {
    // Tied items may appear in any order.
    for (int pos = 1; pos < ground_truth_.size(); ++pos)
      if (pl->item_value(ground_truth_.at(pos)) > pl->item_value(ground_truth_.at(pos - 1)))
        throw DomainError("human type: Plackett-Luce values must not increase along the ground truth");
  } else if (std::holds_alternative<MallowsModel>(noise_) && !(model_center(noise_) == ground_truth_)) {
    throw DomainError("human type: noise model center differs from the ground truth");
  }
}

HumanType HumanType::mallows(const Ranking& ground_truth, double phi, ValueProfile values, double weight) {
  return HumanType(ground_truth, MallowsModel(ground_truth, phi), std::move(values), weight);
}

HumanType HumanType::plackett_luce(const Ranking& ground_truth, double beta, ValueProfile values, double weight) {
  std::vector<double> item_values(static_cast<std::size_t>(ground_truth.size()));
  for (int pos = 0; pos < ground_truth.size(); ++pos)
    item_values[static_cast<std::size_t>(ground_truth.at(pos))] = values.at(pos);
  PlackettLuceModel model(std::move(item_values), beta);
  return HumanType(ground_truth, std::move(model), std::move(values), weight);
}

HumanType HumanType::with_weight(double w) const { return HumanType(ground_truth_, noise_, values_, w); }

Population::Population(std::vector<HumanType> types) : types_(std::move(types)) {
  if (types_.empty()) throw DomainError("population must contain at least one type");
  const int m = types_.front().size();
  double total = 0.0;
  for (const auto& h : types_) {
    if (h.size() != m) throw DimensionError("population types differ in item count");
    total += h.weight();
  }
  if (std::abs(total - 1.0) > 1e-9) throw DomainError("population weights must sum to 1");
  if (total != 1.0) {
    renormalized_ = true;
    for (auto& h : types_) h = h.with_weight(h.weight() / total);
  }
}

AlgorithmPolicy::AlgorithmPolicy(NoiseModel model, int k) : model_(std::move(model)), k_(k) {
  if (k_ < 1 || k_ > size()) throw DomainError("menu size must satisfy 1 <= k <= m");
}

AlgorithmPolicy AlgorithmPolicy::noiseless(const Ranking& center, int k) {
  return AlgorithmPolicy(MallowsModel(center, kNoiseless), k);
}

AlgorithmPolicy AlgorithmPolicy::mallows(const Ranking& center, double phi, int k) {
  if (!(phi > 0.0)) throw DomainError("algorithm accuracy must be positive or noiseless");
  return AlgorithmPolicy(MallowsModel(center, phi), k);
}

AlgorithmPolicy AlgorithmPolicy::from_model(NoiseModel model, int k) { return AlgorithmPolicy(std::move(model), k); }

bool AlgorithmPolicy::is_noiseless() const {
  const auto* m = std::get_if<MallowsModel>(&model_);
  return m != nullptr && m->is_noiseless();
}

AlgorithmPolicy AlgorithmPolicy::with_swapped(Item i, Item j) const {
  if (const auto* m = std::get_if<MallowsModel>(&model_))
    return AlgorithmPolicy(MallowsModel(apply_swap(m->center(), i, j), m->phi()), k_);
  if (const auto* pl = std::get_if<PlackettLuceModel>(&model_)) {
    if (i == j || i < 0 || j < 0 || i >= pl->size() || j >= pl->size())
      throw DomainError("with_swapped: invalid item pair");
    std::vector<double> v = pl->item_values();
    std::swap(v[static_cast<std::size_t>(i)], v[static_cast<std::size_t>(j)]);
    return AlgorithmPolicy(PlackettLuceModel(std::move(v), pl->beta()), k_);
  }
  std::vector<std::pair<Ranking, double>> support;
  for (const auto& [r, p] : std::get<ExplicitModel>(model_).support()) support.emplace_back(apply_swap(r, i, j), p);
  return AlgorithmPolicy(ExplicitModel(std::move(support)), k_);
}

std::vector<std::pair<ItemSet, double>> menu_distribution(const AlgorithmPolicy& a) {
  if (a.is_noiseless()) return {{a.menu(), 1.0}};
  const int m = a.size();
  if (binomial(m, a.k()) > kMenuEnumerationCap) throw CapacityError("menu_distribution: too many menus to enumerate");
  std::vector<std::pair<ItemSet, double>> out;
  if (const auto* ex = std::get_if<ExplicitModel>(&a.model())) {
    for (const auto& [r, p] : ex->support()) {
      const ItemSet s = r.prefix(a.k());
      auto it = std::find_if(out.begin(), out.end(), [s](const auto& e) { return e.first == s; });
      if (it == out.end())
        out.emplace_back(s, p);
      else
        it->second += p;
    }
    return out;
  }
  for_each_subset(m, a.k(), [&](ItemSet s) {
    const double p = topk_set_prob(a.model(), s);
    if (p > 0.0) out.emplace_back(s, p);
  });
  return out;
}

}  // namespace curation
