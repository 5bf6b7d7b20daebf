#include "curation/config.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

#include "curation/errors.hpp"
#include "curation/experiments.hpp"

namespace curation {

using nlohmann::json;

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names{"sushi", "beta-sweep", "tension", "bench"};
  return names;
}

namespace {

std::string joined(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : ", ") + x;
  return s;
}

template <typename T>
T value_or(const json& cfg, const char* key, T fallback) {
  if (!cfg.contains(key)) return fallback;
  try {
    return cfg.at(key).get<T>();
  } catch (const json::exception& e) {
    throw DomainError(fmt::format("config key '{}': {}", key, e.what()));
  }
}

std::vector<double> grid_or(const json& cfg, const char* key, std::vector<double> fallback) {
  if (!cfg.contains(key)) return fallback;
  const json& g = cfg.at(key);
  try {
    if (g.is_array()) {
      auto v = g.get<std::vector<double>>();
      if (v.empty()) throw DomainError("grid must be nonempty");
      return v;
    }
    if (g.is_object()) return step_grid(g.at("start").get<double>(), g.at("stop").get<double>(), g.at("step").get<double>());
  } catch (const json::exception& e) {
    throw DomainError(fmt::format("config key '{}': {}", key, e.what()));
  } catch (const DomainError& e) {
    throw DomainError(fmt::format("config key '{}': {}", key, e.what()));
  }
  throw DomainError(fmt::format("config key '{}': expected a list or {{start, stop, step}}", key));
}

void check_keys(const json& cfg, const std::set<std::string>& allowed) {
  for (const auto& [key, _] : cfg.items()) {
    if (!allowed.count(key)) {
      std::vector<std::string> v(allowed.begin(), allowed.end());
      throw DomainError(fmt::format("unknown config key '{}' (valid: {})", key, joined(v)));
    }
  }
}

Table run_sushi(const json& cfg, RunResult&) {
  check_keys(cfg, {"experiment", "output", "seed", "k", "phi_grid", "profile", "any_m"});
  PreferenceProfile prof = cfg.contains("profile") ? load_profile_file(value_or<std::string>(cfg, "profile", ""))
                                                    : sushi_fixture();
  const auto rows = sushi_experiment(prof, grid_or(cfg, "phi_grid", step_grid(0.0, 3.0, 0.25)),
                                     value_or(cfg, "k", 3), value_or(cfg, "any_m", false));
  return sushi_table(rows);
}

Table run_beta(const json& cfg, RunResult&) {
  check_keys(cfg, {"experiment", "output", "seed", "m", "k", "phi_h", "phi_a", "gumbel_scale", "betas", "models"});
  BetaSweepSpec spec;
  spec.m = value_or(cfg, "m", spec.m);
  spec.k = value_or(cfg, "k", spec.k);
  spec.phi_h = value_or(cfg, "phi_h", spec.phi_h);
  spec.phi_a = value_or(cfg, "phi_a", spec.phi_a);
  spec.gumbel_scale = value_or(cfg, "gumbel_scale", spec.gumbel_scale);
  spec.betas = grid_or(cfg, "betas", step_grid(0.0, 3.0, 0.25));
  const auto models = value_or(cfg, "models", std::vector<std::string>{"mallows", "plackett-luce"});
  for (const auto& name : models)
    if (name != "mallows" && name != "plackett-luce")
      throw DomainError("config key 'models': unknown model '" + name + "' (valid: mallows, plackett-luce)");
  spec.mallows = std::find(models.begin(), models.end(), "mallows") != models.end();
  spec.plackett_luce = std::find(models.begin(), models.end(), "plackett-luce") != models.end();
  return beta_sweep_table(beta_sweep(spec));
}

Table run_tension(const json& cfg, RunResult&) {
  check_keys(cfg, {"experiment", "output", "seed", "k", "phi_grid", "gammas"});
  const auto grid = grid_or(cfg, "phi_grid", step_grid(0.0, 3.0, 0.3));
  const int k = value_or(cfg, "k", 3);
  std::vector<TensionRow> rows;
  for (double gamma : grid_or(cfg, "gammas", {0.5, 3.0})) {
    auto part = tension_experiment(gamma, grid, k);
    rows.insert(rows.end(), part.begin(), part.end());
  }
  return tension_table(rows);
}

Table run_bench(const json& cfg, RunResult& res) {
  check_keys(cfg, {"experiment", "output", "seed", "sizes", "ks", "family_t", "phi_h", "gamma"});
  BenchSpec spec;
  spec.sizes = value_or(cfg, "sizes", spec.sizes);
  spec.ks = value_or(cfg, "ks", spec.ks);
  spec.family_t = value_or(cfg, "family_t", spec.family_t);
  spec.phi_h = value_or(cfg, "phi_h", spec.phi_h);
  spec.gamma = value_or(cfg, "gamma", spec.gamma);
  res.warnings.push_back("bench timings are wall-clock and vary between runs");
  return bench_table(mip_bench(spec));
}

json parse_document(const std::string& text, const char* what) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t upto = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + upto, '\n'));
    throw ParseError(fmt::format("malformed {}: {}", what, e.what()), line);
  }
  if (!doc.is_object()) throw ParseError(fmt::format("{} must be a JSON object", what), 1);
  return doc;
}

std::string read_file(const std::string& path, const char* what) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(fmt::format("cannot open {} {}", what, path));
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Ranking ranking_from(const json& j, const char* key) {
  try {
    return Ranking::from_one_indexed(j.get<std::vector<int>>());
  } catch (const json::exception& e) {
    throw DomainError(fmt::format("population key '{}': {}", key, e.what()));
  }
}

ValueProfile values_from(const json& t, int m) {
  if (!t.contains("values")) throw DomainError("population type is missing 'values'");
  const json& v = t.at("values");
  if (v.is_string()) {
    const auto name = v.get<std::string>();
    if (name == "borda") return borda_values(m);
    if (name == "top") {
      std::vector<double> top(static_cast<std::size_t>(m), 0.0);
      top[0] = 1.0;
      return ValueProfile(std::move(top));
    }
    throw DomainError("population key 'values': unknown profile '" + name + "' (valid: borda, top, or a list)");
  }
  try {
    auto list = v.get<std::vector<double>>();
    if (static_cast<int>(list.size()) != m) throw DimensionError("population key 'values': length differs from m");
    return ValueProfile(std::move(list));
  } catch (const json::exception& e) {
    throw DomainError(fmt::format("population key 'values': {}", e.what()));
  }
}

double phi_from(const json& t) {
  if (!t.contains("phi")) throw DomainError("mallows type is missing 'phi'");
  const json& p = t.at("phi");
  if (p.is_string()) {
    const auto s = p.get<std::string>();
    if (s == "noiseless" || s == "inf") return kNoiseless;
    throw DomainError("population key 'phi': expected a number or \"noiseless\"");
  }
  if (!p.is_number()) throw DomainError("population key 'phi': expected a number or \"noiseless\"");
  return p.get<double>();
}

HumanType type_from(const json& t, double default_weight) {
  check_keys(t, {"ground_truth", "values", "weight", "model", "phi", "beta", "support"});
  if (!t.contains("ground_truth")) throw DomainError("population type is missing 'ground_truth'");
  const Ranking gt = ranking_from(t.at("ground_truth"), "ground_truth");
  const ValueProfile values = values_from(t, gt.size());
  const double weight = value_or(t, "weight", default_weight);
  const auto model = value_or<std::string>(t, "model", "mallows");
  if (model == "mallows") return HumanType::mallows(gt, phi_from(t), values, weight);
  if (model == "plackett-luce") return HumanType::plackett_luce(gt, value_or(t, "beta", 1.0), values, weight);
  if (model == "explicit") {
    if (!t.contains("support") || !t.at("support").is_array())
      throw DomainError("explicit type needs a 'support' list");
    std::vector<std::pair<Ranking, double>> support;
    for (const auto& entry : t.at("support")) {
      if (!entry.is_object() || !entry.contains("ranking") || !entry.contains("p"))
        throw DomainError("explicit support entries need 'ranking' and 'p'");
      support.emplace_back(ranking_from(entry.at("ranking"), "ranking"), value_or(entry, "p", 0.0));
    }
    return HumanType(gt, ExplicitModel(std::move(support)), values, weight);
  }
  throw DomainError("population key 'model': unknown model '" + model + "' (valid: mallows, plackett-luce, explicit)");
}

}  // namespace

Population population_from_json(const std::string& json_text) {
  const json doc = parse_document(json_text, "population");
  check_keys(doc, {"types"});
  if (!doc.contains("types") || !doc.at("types").is_array() || doc.at("types").empty())
    throw DomainError("population needs a nonempty 'types' list");
  const auto& types = doc.at("types");
  std::vector<HumanType> out;
  for (const auto& t : types) {
    if (!t.is_object()) throw DomainError("population types must be objects");
    out.push_back(type_from(t, 1.0 / static_cast<double>(types.size())));
  }
  return Population(std::move(out));
}

Population load_population_file(const std::string& path) {
  return population_from_json(read_file(path, "population"));
}

RunResult run_config_text(const std::string& json_text) {
  const json cfg = parse_document(json_text, "config");
  if (!cfg.contains("experiment"))
    throw DomainError("config is missing 'experiment' (valid: " + joined(experiment_names()) + ")");
  RunResult res;
  res.experiment = value_or<std::string>(cfg, "experiment", "");
  if (cfg.contains("output")) res.output = value_or<std::string>(cfg, "output", "");
  (void)value_or(cfg, "seed", 0L);
  if (res.experiment == "sushi")
    res.table = run_sushi(cfg, res);
  else if (res.experiment == "beta-sweep")
    res.table = run_beta(cfg, res);
  else if (res.experiment == "tension")
    res.table = run_tension(cfg, res);
  else if (res.experiment == "bench")
    res.table = run_bench(cfg, res);
  else
    throw DomainError("unknown experiment '" + res.experiment + "' (valid: " + joined(experiment_names()) + ")");
  return res;
}

RunResult run_config_file(const std::string& path) { return run_config_text(read_file(path, "config")); }

bool write_result(const RunResult& result) {
  if (!result.output) return false;
  emit_csv(result.table, *result.output);
  return true;
}

}  // namespace curation
