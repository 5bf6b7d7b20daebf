#pragma once

#include <optional>
#include <string>
#include <vector>

#include "curation/population.hpp"
#include "curation/table.hpp"

namespace curation {

/// Outcome of a configured experiment run.
struct RunResult {
  std::string experiment;
  Table table;
  std::optional<std::string> output;  // CSV destination, if configured
  std::vector<std::string> warnings;
};

/// Experiment names accepted in the "experiment" key.
const std::vector<std::string>& experiment_names();

/// Runs the experiment described by a JSON document. Recognised keys:
///   experiment  sushi | beta-sweep | tension | bench (required)
///   output      CSV path (optional; callers print to stdout otherwise)
///   seed        integer, recorded for reproducibility (all runs are exact)
///   k, m        menu size / item count
///   phi_grid, betas        grid: [numbers] or {"start", "stop", "step"}
///   profile, any_m         sushi: ranking file and generic-m flag
///   phi_h, phi_a, gumbel_scale, models   beta-sweep
///   gammas                 tension
///   sizes, ks, family_t, gamma   bench
/// Throws ParseError (with line) for malformed JSON and DomainError for bad values.
RunResult run_config_text(const std::string& json_text);
RunResult run_config_file(const std::string& path);

/// Population described as JSON:
///   {"types": [{"ground_truth": [1, 2, 3], "values": [1, 0, 0] | "borda" | "top",
///               "weight": 0.5, "model": "mallows" | "plackett-luce" | "explicit",
///               "phi": 0.7 | "noiseless", "beta": 1.0,
///               "support": [{"ranking": [1, 2, 3], "p": 0.9}, ...]}]}
/// Items are 1-indexed; "model" defaults to mallows and "weight" to 1 / #types.
Population population_from_json(const std::string& json_text);
Population load_population_file(const std::string& path);

/// Writes result.table to result.output when set; returns false if it was not set.
bool write_result(const RunResult& result);

}  // namespace curation
