#include "curation/experiments.hpp"

#include <fmt/format.h>

#include <chrono>
#include <cmath>

#include "curation/errors.hpp"
#include "curation/mip.hpp"

namespace curation {

std::vector<double> step_grid(double start, double stop, double step) {
  if (!(step > 0.0) || !std::isfinite(start) || !std::isfinite(stop) || stop < start)
    throw DomainError("step_grid: need finite start <= stop and positive step");
  const auto n = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> g;
  for (long i = 0; i < n; ++i) g.push_back(start + static_cast<double>(i) * step);
  return g;
}

std::string menu_label(ItemSet menu) {
  std::string s = "{";
  bool first = true;
  for (Item x : menu.items()) {
    if (!first) s += ' ';
    s += std::to_string(x + 1);
    first = false;
  }
  return s + "}";
}

namespace {

double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

// Center ranking of the top t items drawn from `perm`, followed by t..m-1.
Ranking extend(const std::vector<Item>& perm, int m) {
  std::vector<Item> v = perm;
  for (Item x = static_cast<Item>(perm.size()); x < m; ++x) v.push_back(x);
  return Ranking(std::move(v));
}

// Every ordering of the top t items, weighted by Mallows(gamma) around (x1..xt).
std::vector<std::pair<Ranking, double>> top_t_mixture(int m, int t, double gamma) {
  const MallowsModel top(Ranking::identity(t), gamma);
  std::vector<std::pair<Ranking, double>> out;
  for_each_permutation(t, [&](const Ranking& r) { out.emplace_back(extend(r.order(), m), mallows_perm_prob(top, r)); });
  return out;
}

}  // namespace

std::vector<SushiRow> sushi_experiment(const PreferenceProfile& profile, const std::vector<double>& phi_grid, int k,
                                       bool any_m) {
  if (!any_m && profile.m != 5) throw DimensionError("sushi_experiment: the canonical run uses m = 5");
  if (phi_grid.empty()) throw DomainError("sushi_experiment: empty accuracy grid");
  const int m = profile.m;
  const ValueProfile values = borda_values(m);
  const ItemSet modal_menu = modal_ranking(profile).prefix(k);
  std::vector<SushiRow> rows;
  for (double phi : phi_grid) {
    const Population pop = profile_population(profile, phi, values);
    std::vector<double> solo;
    for (const auto& h : pop.types()) solo.push_back(solo_utility(h));
    struct Scored {
      ItemSet menu;
      double welfare;
      double fraction;
    };
    std::vector<Scored> scored;
    for_each_subset(m, k, [&](ItemSet s) {
      std::vector<double> joint;
      for (const auto& h : pop.types()) joint.push_back(menu_utility(h, s));
      const WelfareReport rep = make_report(pop, solo, joint);
      scored.push_back({s, rep.social_welfare, rep.uplift_fraction});
    });
    // scored is in lexicographic order, so strict improvement keeps the smallest menu on ties.
    const Scored* aw = &scored.front();
    const Scored* au = &scored.front();
    const Scored* am = nullptr;
    for (const auto& s : scored) {
      if (s.welfare > aw->welfare + 1e-12) aw = &s;
      if (s.fraction > au->fraction + 1e-12 ||
          (std::abs(s.fraction - au->fraction) <= 1e-12 && s.welfare > au->welfare + 1e-12))
        au = &s;
      if (s.menu == modal_menu) am = &s;
    }
    rows.push_back({phi, "A_w", aw->menu, aw->welfare, aw->fraction});
    rows.push_back({phi, "A_m", am->menu, am->welfare, am->fraction});
    rows.push_back({phi, "A_u", au->menu, au->welfare, au->fraction});
  }
  return rows;
}

Table sushi_table(const std::vector<SushiRow>& rows) {
  Table t{{"phi_h", "algorithm", "welfare", "uplift_fraction", "menu"}, {}};
  for (const auto& r : rows)
    t.add_row({format_number(r.phi_h), r.algorithm, format_number(r.welfare), format_number(r.uplift_fraction),
               menu_label(r.menu)});
  return t;
}

std::vector<BetaSweepRow> beta_sweep(const BetaSweepSpec& spec) {
  if (spec.betas.empty()) throw DomainError("beta_sweep: empty beta grid");
  const Ranking aligned = Ranking::identity(spec.m);
  std::vector<Ranking> centers = spec.centers;
  if (centers.empty())
    for_each_permutation(spec.m, [&](const Ranking& r) {
      if (!(r == aligned)) centers.push_back(r);
    });
  std::vector<BetaSweepRow> rows;
  for (double beta : spec.betas) {
    const ValueProfile values = exponential_values(spec.m, beta);
    if (spec.mallows) {
      const HumanType h = HumanType::mallows(aligned, spec.phi_h, values);
      const double base = joint_utility(h, AlgorithmPolicy::mallows(aligned, spec.phi_a, spec.k));
      for (const auto& c : centers)
        rows.push_back({beta, "mallows", c, joint_utility(h, AlgorithmPolicy::mallows(c, spec.phi_a, spec.k)) - base});
    }
    if (spec.plackett_luce) {
      const HumanType h = HumanType::plackett_luce(aligned, spec.gumbel_scale, values);
      auto policy = [&](const Ranking& c) {
        std::vector<double> item_values(static_cast<std::size_t>(spec.m));
        for (int pos = 0; pos < spec.m; ++pos) item_values[static_cast<std::size_t>(c.at(pos))] = values.at(pos);
        return AlgorithmPolicy::from_model(PlackettLuceModel(std::move(item_values), spec.gumbel_scale), spec.k);
      };
      const double base = joint_utility(h, policy(aligned));
      for (const auto& c : centers)
        rows.push_back({beta, "plackett-luce", c, joint_utility(h, policy(c)) - base});
    }
  }
  return rows;
}

Table beta_sweep_table(const std::vector<BetaSweepRow>& rows) {
  Table t{{"beta", "model", "center", "utility_diff"}, {}};
  for (const auto& r : rows)
    t.add_row({format_number(r.beta), r.model, r.center.to_string(), format_number(r.utility_diff)});
  return t;
}

Population tension_population(double gamma, double phi_h) {
  const ValueProfile values({1.0, 1.0, 0.5, 0.2, 0.0, 0.0});
  std::vector<HumanType> types;
  for (const auto& [r, w] : top_t_mixture(6, 3, gamma)) types.push_back(HumanType::mallows(r, phi_h, values, w));
  return Population(std::move(types));
}

std::vector<TensionRow> tension_experiment(double gamma, const std::vector<double>& phi_grid, int k) {
  if (phi_grid.empty()) throw DomainError("tension_experiment: empty accuracy grid");
  std::vector<TensionRow> rows;
  for (double phi : phi_grid) {
    const Population pop = tension_population(gamma, phi);
    rows.push_back({gamma, phi, enumerate_best_menu(pop, k), optimize_with_uplift(pop, k)});
  }
  return rows;
}

Table tension_table(const std::vector<TensionRow>& rows) {
  Table t{{"gamma", "phi_h", "welfare_unconstrained", "menu_unconstrained", "welfare_constrained", "menu_constrained"},
          {}};
  for (const auto& r : rows) {
    t.add_row({format_number(r.gamma), format_number(r.phi_h), format_number(r.unconstrained.welfare),
               menu_label(r.unconstrained.menu),
               r.constrained ? format_number(r.constrained->welfare) : std::string("infeasible"),
               r.constrained ? menu_label(r.constrained->menu) : std::string("")});
  }
  return t;
}

Population two_type_population(int m, double phi_h) {
  if (m < 4) throw DomainError("two_type_population: need m >= 4");
  std::vector<double> v(static_cast<std::size_t>(m), 0.0);
  for (int j = 0; j < std::min(m, 4); ++j) v[static_cast<std::size_t>(j)] = 4 - j;
  const ValueProfile values(v);
  const Ranking first = Ranking::identity(m);
  const Ranking second = apply_swap(first, 0, 3);
  return Population({HumanType::mallows(first, phi_h, values, 0.5), HumanType::mallows(second, phi_h, values, 0.5)});
}

Population mallows_family_population(int m, int t, double gamma, double phi_h) {
  if (t < 1 || t > m) throw DomainError("mallows_family_population: need 1 <= t <= m");
  const ValueProfile values = borda_values(m);
  std::vector<HumanType> types;
  for (const auto& [r, w] : top_t_mixture(m, t, gamma)) types.push_back(HumanType::mallows(r, phi_h, values, w));
  return Population(std::move(types));
}

std::vector<BenchRow> mip_bench(const BenchSpec& spec) {
  std::vector<BenchRow> rows;
  auto run = [&](const std::string& family, const Population& pop, int k) {
    BenchRow row;
    row.family = family;
    row.m = pop.items();
    row.n = static_cast<int>(pop.size());
    row.k = k;
    auto t0 = std::chrono::steady_clock::now();
    const OptimizeResult bnb = branch_and_bound_menu(pop, k);
    row.bnb_ms = elapsed_ms(t0);
    row.bnb_value = bnb.welfare;
    row.bnb_nodes = bnb.nodes;
    if (binomial(pop.items(), k) <= kMenuEnumerationCap) {
      t0 = std::chrono::steady_clock::now();
      row.enum_value = enumerate_best_menu(pop, k).welfare;
      row.enum_ms = elapsed_ms(t0);
    }
    const MipInstance mip = build_mip(pop, k);
    row.mip_variables = mip.variables.size();
    row.mip_rows = mip.constraints.size();
    rows.push_back(row);
  };
  for (int m : spec.sizes) {
    for (int k : spec.ks) {
      if (k > m) continue;
      if (m >= 4) run("two-type", two_type_population(m, spec.phi_h), k);
      for (int t : spec.family_t)
        if (t <= m) run(fmt::format("mallows-top{}", t), mallows_family_population(m, t, spec.gamma, spec.phi_h), k);
    }
  }
  return rows;
}

Table bench_table(const std::vector<BenchRow>& rows) {
  Table t{{"family", "m", "n", "k", "bnb_value", "enum_value", "bnb_ms", "enum_ms", "bnb_nodes", "mip_variables",
           "mip_rows"},
          {}};
  auto opt = [](const std::optional<double>& x) { return x ? format_number(*x) : std::string(""); };
  for (const auto& r : rows)
    t.add_row({r.family, std::to_string(r.m), std::to_string(r.n), std::to_string(r.k), format_number(r.bnb_value),
               opt(r.enum_value), fmt::format("{:.3f}", r.bnb_ms), r.enum_ms ? fmt::format("{:.3f}", *r.enum_ms) : "",
               std::to_string(r.bnb_nodes), std::to_string(r.mip_variables), std::to_string(r.mip_rows)});
  return t;
}

}  // namespace curation
