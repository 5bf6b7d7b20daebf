// Command-line front end. Items are 1-indexed in every argument and output.

#include <fmt/core.h>

#include <CLI11.hpp>
#include <json.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "curation/analysis.hpp"
#include "curation/collaboration.hpp"
#include "curation/config.hpp"
#include "curation/errors.hpp"
#include "curation/experiments.hpp"
#include "curation/mip.hpp"
#include "curation/optimize.hpp"
#include "curation/welfare.hpp"

using namespace curation;

namespace {

// ---- argument parsing helpers ---------------------------------------------

std::vector<double> parse_numbers(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    if (cell.empty()) continue;
    if (cell == "inf" || cell == "noiseless") {
      out.push_back(kNoiseless);
      continue;
    }
    try {
      std::size_t used = 0;
      out.push_back(std::stod(cell, &used));
      if (used != cell.size()) throw std::invalid_argument(cell);
    } catch (const std::exception&) {
      throw DomainError(fmt::format("{}: '{}' is not a number", what, cell));
    }
  }
  if (out.empty()) throw DomainError(fmt::format("{}: expected a comma-separated list", what));
  return out;
}

std::vector<int> parse_labels(const std::string& text, const char* what) {
  std::vector<int> out;
  for (double x : parse_numbers(text, what)) {
    if (x != static_cast<int>(x)) throw DomainError(fmt::format("{}: item labels must be integers", what));
    out.push_back(static_cast<int>(x));
  }
  return out;
}

Ranking parse_ranking(const std::string& text, const char* what) {
  return Ranking::from_one_indexed(parse_labels(text, what));
}

ItemSet parse_items(const std::string& text, int m, const char* what) {
  ItemSet s;
  for (int label : parse_labels(text, what)) {
    if (label < 1 || label > m) throw DomainError(fmt::format("{}: item {} outside 1..{}", what, label, m));
    s.insert(label - 1);
  }
  return s;
}

Item parse_item(int label, int m, const char* what) {
  if (label < 1 || label > m) throw DomainError(fmt::format("{}: item {} outside 1..{}", what, label, m));
  return label - 1;
}

double parse_phi(const std::string& text) {
  if (text == "inf" || text == "noiseless") return kNoiseless;
  return parse_numbers(text, "accuracy").front();
}

ValueProfile parse_values(const std::string& text, int m) {
  if (text == "borda") return borda_values(m);
  if (text == "top") {
    std::vector<double> v(static_cast<std::size_t>(m), 0.0);
    v[0] = 1.0;
    return ValueProfile(std::move(v));
  }
  auto v = parse_numbers(text, "--values");
  if (static_cast<int>(v.size()) != m) throw DimensionError("--values: length differs from the ground truth");
  return ValueProfile(std::move(v));
}

// ---- shared option groups ----------------------------------------------------

struct HumanOpts {
  std::string population;
  std::string gt;
  std::string phi_h = "1";
  std::string values = "top";
  std::optional<double> beta_h;

  void attach(CLI::App* app) {
    app->add_option("--population", population, "JSON population file");
    app->add_option("--gt", gt, "ground-truth ranking of a single human, e.g. 1,2,3");
    app->add_option("--phi-h", phi_h, "Mallows accuracy of the single human (number or 'noiseless')");
    app->add_option("--beta-h", beta_h, "use a Plackett-Luce human with this noise scale");
    app->add_option("--values", values, "values by rank: list, 'borda' or 'top'");
  }

  Population population_or_single() const {
    if (!population.empty()) {
      Population pop = load_population_file(population);
      if (pop.renormalized()) std::cerr << "warning: population weights renormalised to sum to one\n";
      return pop;
    }
    return Population({single()});
  }

  HumanType single() const {
    if (!population.empty()) {
      const Population pop = load_population_file(population);
      if (pop.size() != 1) throw DomainError("this command takes one human; the population file lists several");
      return pop[0].with_weight(1.0);
    }
    if (gt.empty()) throw DomainError("describe the human with --gt (or --population)");
    const Ranking r = parse_ranking(gt, "--gt");
    const ValueProfile v = parse_values(values, r.size());
    if (beta_h) return HumanType::plackett_luce(r, *beta_h, v);
    return HumanType::mallows(r, parse_phi(phi_h), v);
  }
};

struct AlgoOpts {
  std::string center;
  std::string phi_a = "noiseless";
  int k = 2;

  void attach(CLI::App* app, bool need_center = true) {
    auto* c = app->add_option("--center", center, "algorithm's central ranking, e.g. 1,3,2");
    if (need_center) c->required();
    app->add_option("--phi-a", phi_a, "algorithm accuracy (number or 'noiseless')")->capture_default_str();
    app->add_option("-k,--k", k, "menu size")->capture_default_str();
  }

  AlgorithmPolicy policy() const {
    const Ranking c = parse_ranking(center, "--center");
    const double phi = parse_phi(phi_a);
    return phi == kNoiseless ? AlgorithmPolicy::noiseless(c, k) : AlgorithmPolicy::from_model(MallowsModel(c, phi), k);
  }
};

void emit(const Table& t, const std::string& output) {
  if (output.empty())
    emit_csv(t, std::cout);
  else
    emit_csv(t, output);
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

// ---- subcommands ---------------------------------------------------------------

struct ProbCmd {
  std::string center, item_values, perm, pair, topk, choice;
  std::string phi = "1";
  double beta = 1.0;
  int first = 0, target = 0;

  void attach(CLI::App* app) {
    app->add_option("--center", center, "Mallows central ranking");
    app->add_option("--phi", phi, "Mallows accuracy")->capture_default_str();
    app->add_option("--item-values", item_values, "Plackett-Luce item values, indexed by item");
    app->add_option("--beta", beta, "Plackett-Luce noise scale")->capture_default_str();
    auto* q = app->add_option_group("query", "exactly one query");
    q->add_option("--perm", perm, "probability of this full ranking");
    q->add_option("--first", first, "probability that this item is ranked first");
    q->add_option("--pair", pair, "probability that the first item precedes the second (i,j)");
    q->add_option("--topk-set", topk, "probability that the top |S| items are exactly S");
    q->add_option("--choice", choice, "pick distribution over this menu");
    q->require_option(1);
    app->add_option("--target", target, "with --choice: report only this item");
  }

  int run() const {
    if (center.empty() == item_values.empty()) throw DomainError("give either --center (Mallows) or --item-values");
    const NoiseModel model = center.empty()
                                 ? NoiseModel(PlackettLuceModel(parse_numbers(item_values, "--item-values"), beta))
                                 : NoiseModel(MallowsModel(parse_ranking(center, "--center"), parse_phi(phi)));
    const int m = model_size(model);
    const auto* mallows = std::get_if<MallowsModel>(&model);
    double p = 0.0;
    if (!perm.empty()) {
      p = perm_prob(model, parse_ranking(perm, "--perm"));
    } else if (first != 0) {
      const Item x = parse_item(first, m, "--first");
      p = mallows ? mallows_first_item_prob(*mallows, x) : choice_dist(model, ItemSet::universe(m))[x];
    } else if (!pair.empty()) {
      const auto ij = parse_labels(pair, "--pair");
      if (ij.size() != 2) throw DomainError("--pair takes two items");
      const Item i = parse_item(ij[0], m, "--pair"), j = parse_item(ij[1], m, "--pair");
      if (mallows) {
        const bool forward = mallows->center().prefers(i, j);
        p = forward ? mallows_pairwise_prob(*mallows, i, j) : 1.0 - mallows_pairwise_prob(*mallows, j, i);
      } else {
        p = choice_dist(model, ItemSet{i, j})[i];
      }
    } else if (!topk.empty()) {
      p = topk_set_prob(model, parse_items(topk, m, "--topk-set"));
    } else {
      const ItemSet s = parse_items(choice, m, "--choice");
      const auto d = choice_dist(model, s);
      if (target != 0) {
        const Item t = parse_item(target, m, "--target");
        if (!s.contains(t)) throw DomainError("--target must belong to the --choice menu");
        p = d[t];
      } else {
        Table t{{"item", "probability"}, {}};
        for (Item x : s.items()) t.add_row({std::to_string(x + 1), format_number(d[x])});
        emit_csv(t, std::cout);
        return 0;
      }
    }
    fmt::print("{}\n", format_number(p));
    return 0;
  }
};

struct CollabCmd {
  HumanOpts human;
  AlgoOpts algo;
  long samples = 0;
  std::uint64_t seed = 1;
  std::string output;

  void attach(CLI::App* app) {
    human.attach(app);
    algo.attach(app);
    app->add_option("--mc", samples, "Monte Carlo rounds instead of the exact sum");
    app->add_option("--seed", seed, "seed for --mc")->capture_default_str();
    app->add_option("-o,--output", output, "CSV destination (default stdout)");
  }

  int run() const {
    const HumanType h = human.single();
    const AlgorithmPolicy a = algo.policy();
    const auto solo = solo_pick_dist(h);
    PickDistribution joint;
    if (samples > 0) {
      Rng rng(seed);
      joint = mc_joint_pick_dist(h, a, samples, rng);
    } else {
      joint = joint_pick_dist(h, a);
    }
    Table t{{"item", "value", "solo_pick", "joint_pick"}, {}};
    for (Item x = 0; x < h.size(); ++x)
      t.add_row({std::to_string(x + 1), format_number(h.utility(x)), format_number(solo[x]), format_number(joint[x])});
    emit(t, output);
    const double us = expected_utility(solo, h), uj = expected_utility(joint, h);
    std::cerr << fmt::format("solo utility {}, joint utility {}, uplift {}{}\n", format_number(us), format_number(uj),
                             yes_no(uj > us + kUpliftTolerance), samples > 0 ? " (Monte Carlo estimate)" : "");
    return 0;
  }
};

struct WelfareCmd {
  HumanOpts human;
  AlgoOpts algo;
  std::string output;

  void attach(CLI::App* app) {
    human.attach(app);
    algo.attach(app);
    app->add_option("-o,--output", output, "CSV destination (default stdout)");
  }

  int run() const {
    const Population pop = human.population_or_single();
    const auto rep = verify_uplift(pop, algo.policy());
    Table t{{"type", "weight", "solo", "joint", "uplifted"}, {}};
    for (std::size_t i = 0; i < pop.size(); ++i) {
      const auto& o = rep.per_type[i];
      t.add_row({std::to_string(i + 1), format_number(pop[i].weight()), format_number(o.solo), format_number(o.joint),
                 yes_no(o.uplifted)});
    }
    emit(t, output);
    std::cerr << fmt::format("social welfare {}, uplift fraction {} ({} of {} types), uplift for all {}\n",
                             format_number(rep.social_welfare), format_number(rep.uplift_fraction),
                             rep.uplifted_count, pop.size(), yes_no(rep.uplift_all));
    return 0;
  }
};

struct OptimizeCmd {
  HumanOpts human;
  int k = 2;
  std::string method = "bnb";
  bool uplift = false;
  std::string lp_path, lp_cardinality = "at-most", output;

  void attach(CLI::App* app) {
    human.attach(app);
    app->add_option("-k,--k", k, "menu size")->capture_default_str();
    app->add_option("--method", method, "enumerate or bnb")
        ->check(CLI::IsMember({"enumerate", "bnb"}))
        ->capture_default_str();
    app->add_flag("--uplift", uplift, "only accept menus that uplift every type");
    app->add_option("--export-lp", lp_path, "write the MIP in LP format to this path");
    app->add_option("--lp-cardinality", lp_cardinality, "menu-size row in the LP: at-most or exactly")
        ->check(CLI::IsMember({"at-most", "exactly"}))
        ->capture_default_str();
    app->add_option("-o,--output", output, "CSV destination (default stdout)");
  }

  int run() const {
    const Population pop = human.population_or_single();
    if (!lp_path.empty()) {
      const auto card = lp_cardinality == "exactly" ? CardinalitySense::Exactly : CardinalitySense::AtMost;
      const MipInstance mip = build_mip(pop, k, card);
      export_lp(mip, lp_path);
      std::cerr << fmt::format("wrote {} ({} variables, {} rows)\n", lp_path, mip.variables.size(),
                               mip.constraints.size());
    }
    std::optional<OptimizeResult> res;
    if (uplift) {
      res = optimize_with_uplift(pop, k);
      if (!res) {
        std::cerr << "no noiseless menu uplifts every type\n";
        return 1;
      }
    } else {
      res = method == "enumerate" ? enumerate_best_menu(pop, k) : branch_and_bound_menu(pop, k);
    }
    Table t{{"menu", "welfare", "method", "nodes", "evaluations"}, {}};
    t.add_row({menu_label(res->menu), format_number(res->welfare), res->method, std::to_string(res->nodes),
               std::to_string(res->evaluations)});
    emit(t, output);
    std::string per_type;
    for (std::size_t i = 0; i < res->per_type.size(); ++i)
      per_type += fmt::format("{}{}", i ? ", " : "", format_number(res->per_type[i]));
    std::cerr << "per-type joint utility: " << per_type << "\n";
    return 0;
  }
};

struct AnalyzeCmd {
  HumanOpts human;
  AlgoOpts algo;
  int i = 0, j = 0;
  std::string candidates, output;
  CLI::App* swap = nullptr;
  CLI::App* conditions = nullptr;
  CLI::App* order = nullptr;

  void attach(CLI::App* app) {
    swap = app->add_subcommand("swap", "effect of exchanging two items in the algorithm's model");
    conditions = app->add_subcommand("conditions", "sufficient conditions for a harmful or helpful swap (k = 2)");
    order = app->add_subcommand("order", "certified and numeric order over candidate centers");
    app->require_subcommand(1);
    for (auto* sub : {swap, conditions}) {
      human.attach(sub);
      algo.attach(sub);
      sub->add_option("-o,--output", output, "CSV destination (default stdout)");
    }
    swap->add_option("--i", i, "item the center ranks higher")->required();
    swap->add_option("--j", j, "item the center ranks lower")->required();
    conditions->add_option("--i", i, "higher rank position in the human's ground truth (1-based)")->required();
    conditions->add_option("--j", j, "lower rank position (1-based)")->required();
    human.attach(order);
    order->add_option("--candidates", candidates, "centers separated by ';', e.g. '1,2,3;1,3,2'")->required();
    order->add_option("--phi-a", algo.phi_a, "algorithm accuracy shared by the candidates")->capture_default_str();
    order->add_option("-k,--k", algo.k, "menu size")->capture_default_str();
    order->add_option("-o,--output", output, "CSV destination (default stdout)");
  }

  int run() const {
    const HumanType h = human.single();
    const int m = h.size();
    if (swap->parsed()) {
      const auto rep = swap_effect(h, algo.policy(), parse_item(i, m, "--i"), parse_item(j, m, "--j"));
      Table t{{"item", "aligned", "swapped", "delta"}, {}};
      for (Item x = 0; x < m; ++x)
        t.add_row({std::to_string(x + 1), format_number(rep.aligned[x]), format_number(rep.swapped[x]),
                   format_number(rep.delta(x))});
      emit(t, output);
      std::cerr << "utility change from the swap: " << format_number(rep.utility_delta) << "\n";
      return 0;
    }
    if (conditions->parsed()) {
      const int ri = i - 1, rj = j - 1;
      const AlgorithmPolicy a = algo.policy();
      std::vector<std::pair<std::string, ConditionVerdict>> verdicts;
      if (const auto* mm = std::get_if<MallowsModel>(&h.noise())) {
        verdicts.emplace_back("mallows-harmful", check_mallows_harmful(h.values(), mm->phi(), ri, rj));
        verdicts.emplace_back("mallows-helpful", check_mallows_helpful(h, a, ri, rj));
      } else if (const auto* pl = std::get_if<PlackettLuceModel>(&h.noise())) {
        verdicts.emplace_back("pl-harmful", check_pl_harmful(h.values(), pl->beta(), rj));
        verdicts.emplace_back("pl-helpful", check_pl_helpful(h, a, ri, rj));
      } else {
        throw DomainError("conditions need a Mallows or Plackett-Luce human");
      }
      Table t{{"condition", "applicable", "holds", "premise_holds", "lhs", "rhs", "witness", "note"}, {}};
      for (const auto& [name, v] : verdicts)
        t.add_row({name, yes_no(v.applicable), yes_no(v.holds), yes_no(v.premise_holds), format_number(v.lhs),
                   format_number(v.rhs), v.witness ? std::to_string(*v.witness + 1) : "", v.note});
      emit(t, output);
      return 0;
    }
    std::vector<Ranking> cands;
    std::stringstream ss(candidates);
    std::string one;
    while (std::getline(ss, one, ';'))
      if (!one.empty()) cands.push_back(parse_ranking(one, "--candidates"));
    const auto po = derive_partial_order(h, cands, parse_phi(algo.phi_a), algo.k);
    Table t{{"better", "worse", "source"}, {}};
    for (const auto& e : po.edges)
      t.add_row({cands[static_cast<std::size_t>(e.better)].to_string(), cands[static_cast<std::size_t>(e.worse)].to_string(),
                 to_string(e.source)});
    emit(t, output);
    for (std::size_t c = 0; c < cands.size(); ++c)
      std::cerr << fmt::format("{} joint utility {}\n", cands[c].to_string(), format_number(po.utilities[c]));
    return 0;
  }
};

struct ExperimentCmd {
  std::string name, config, output, profile;
  bool any_m = false;

  void attach(CLI::App* app) {
    app->add_option("name", name, "sushi, beta-sweep, tension or bench");
    app->add_option("--config", config, "JSON config file");
    app->add_option("-o,--output", output, "CSV destination (overrides the config)");
    app->add_option("--profile", profile, "sushi: ranking file (text or CSV) instead of the bundled table");
    app->add_flag("--any-m", any_m, "sushi: accept a profile with any number of items");
  }

  int run() const {
    RunResult res;
    if (!config.empty()) {
      res = run_config_file(config);
      if (!profile.empty() || any_m) throw DomainError("--profile and --any-m go in the config file when --config is used");
      if (!name.empty() && name != res.experiment)
        throw DomainError(fmt::format("config runs '{}' but '{}' was requested", res.experiment, name));
    } else {
      if (name.empty()) throw DomainError("name an experiment or pass --config");
      nlohmann::json doc{{"experiment", name}};
      if (!profile.empty()) doc["profile"] = profile;
      if (any_m) doc["any_m"] = true;
      res = run_config_text(doc.dump());
    }
    for (const auto& w : res.warnings) std::cerr << "warning: " << w << "\n";
    if (!output.empty()) res.output = output;
    if (!write_result(res)) emit_csv(res.table, std::cout);
    return 0;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Human-algorithm menu curation: probabilities, collaboration, welfare and optimisation"};
  app.require_subcommand(1);

  ProbCmd prob;
  CollabCmd collab;
  WelfareCmd welfare;
  OptimizeCmd optimize;
  AnalyzeCmd analyze;
  ExperimentCmd experiment;
  auto* prob_app = app.add_subcommand("prob", "single-query ranking probabilities");
  auto* collab_app = app.add_subcommand("collab", "solo and joint pick distributions for one human");
  auto* welfare_app = app.add_subcommand("welfare", "social welfare and uplift of a policy");
  auto* optimize_app = app.add_subcommand("optimize", "welfare-maximising noiseless menu");
  auto* analyze_app = app.add_subcommand("analyze", "misalignment analysis");
  auto* experiment_app = app.add_subcommand("experiment", "run a canned experiment and emit CSV");
  prob.attach(prob_app);
  collab.attach(collab_app);
  welfare.attach(welfare_app);
  optimize.attach(optimize_app);
  analyze.attach(analyze_app);
  experiment.attach(experiment_app);

  CLI11_PARSE(app, argc, argv);
  try {
    if (prob_app->parsed()) return prob.run();
    if (collab_app->parsed()) return collab.run();
    if (welfare_app->parsed()) return welfare.run();
    if (optimize_app->parsed()) return optimize.run();
    if (analyze_app->parsed()) return analyze.run();
    return experiment.run();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
