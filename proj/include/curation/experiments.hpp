#pragma once

#include <optional>
#include <string>
#include <vector>

#include "curation/optimize.hpp"
#include "curation/profile.hpp"
#include "curation/table.hpp"

namespace curation {

/// start, start + step, ... up to stop (inclusive, with 1e-9 slack).
std::vector<double> step_grid(double start, double stop, double step);

/// "{2 4 5}" in 1-indexed labels.
std::string menu_label(ItemSet menu);

// ---- sushi ---------------------------------------------------------------

struct SushiRow {
  double phi_h = 0.0;
  std::string algorithm;  // "A_w", "A_m" or "A_u"
  ItemSet menu;
  double welfare = 0.0;
  double uplift_fraction = 0.0;
};

/// Noiseless k-menus for a Borda-valued Mallows population at each phi_h:
/// A_w maximises welfare, A_m shows the modal ranking's top k, A_u maximises the
/// weighted uplift fraction (ties: higher welfare, then smaller menu).
/// Throws DimensionError for m != 5 unless `any_m` is set.
std::vector<SushiRow> sushi_experiment(const PreferenceProfile& profile, const std::vector<double>& phi_grid, int k = 3,
                                       bool any_m = false);
Table sushi_table(const std::vector<SushiRow>& rows);

// ---- value-decay sweep ----------------------------------------------------

struct BetaSweepSpec {
  int m = 4;
  int k = 2;
  double phi_h = 0.5;
  double phi_a = 0.5;
  double gumbel_scale = 0.1;
  std::vector<double> betas;
  bool mallows = true;
  bool plackett_luce = true;
  /// Restrict to these centers; empty means every non-identity ranking.
  std::vector<Ranking> centers;
};

struct BetaSweepRow {
  double beta = 0.0;
  std::string model;  // "mallows" or "plackett-luce"
  Ranking center;
  double utility_diff = 0.0;  // E[u | center] - E[u | aligned]
};

std::vector<BetaSweepRow> beta_sweep(const BetaSweepSpec& spec);
Table beta_sweep_table(const std::vector<BetaSweepRow>& rows);

// ---- uplift-constraint tension -------------------------------------------

/// Six types over m = 6 whose top three follow Mallows(gamma) around (x1, x2, x3),
/// values (1, 1, 0.5, 0.2, 0, 0), each a Mallows(phi_h) human.
Population tension_population(double gamma, double phi_h);

struct TensionRow {
  double gamma = 0.0;
  double phi_h = 0.0;
  OptimizeResult unconstrained;
  std::optional<OptimizeResult> constrained;
};

std::vector<TensionRow> tension_experiment(double gamma, const std::vector<double>& phi_grid, int k = 3);
Table tension_table(const std::vector<TensionRow>& rows);

// ---- solver benchmark -----------------------------------------------------

/// Two equally weighted types: the identity and the identity with x1 and x4
/// exchanged; values (4, 3, 2, 1, 0, ...). Requires m >= 4.
Population two_type_population(int m, double phi_h);

/// t! types whose top t items follow Mallows(gamma) around (x1..xt), rest fixed; Borda values.
Population mallows_family_population(int m, int t, double gamma, double phi_h);

struct BenchRow {
  std::string family;
  int m = 0;
  int n = 0;
  int k = 0;
  double bnb_value = 0.0;
  std::optional<double> enum_value;
  double bnb_ms = 0.0;
  std::optional<double> enum_ms;
  long bnb_nodes = 0;
  std::size_t mip_variables = 0;
  std::size_t mip_rows = 0;
};

struct BenchSpec {
  std::vector<int> sizes{6, 8, 10, 12};
  std::vector<int> ks{2, 4};
  std::vector<int> family_t{1, 3};  // top-t permutations: n = t!
  double phi_h = 1.0;
  double gamma = 1.0;
};

std::vector<BenchRow> mip_bench(const BenchSpec& spec);
Table bench_table(const std::vector<BenchRow>& rows);

}  // namespace curation
