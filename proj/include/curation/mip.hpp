#pragma once

#include <iosfwd>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "curation/population.hpp"

namespace curation {

enum class Sense { LessEqual, GreaterEqual, Equal };

/// How the menu-size row is written.
enum class CardinalitySense { AtMost, Exactly };

struct MipVariable {
  std::string name;
  double lower = 0.0;
  double upper = 1.0;
  bool binary = false;
};

struct MipConstraint {
  std::string name;
  std::vector<std::pair<int, double>> terms;
  Sense sense = Sense::LessEqual;
  double rhs = 0.0;
};

/// Mixed-integer program for welfare-maximising noiseless menus over Mallows
/// humans. Binary x_a marks item a as shown; per type, continuous W, y, z, q
/// variables encode the first-among-menu probabilities of the insertion DP.
struct MipInstance {
  int m = 0;
  int k = 0;
  int n = 0;
  std::vector<MipVariable> variables;
  std::vector<MipConstraint> constraints;
  std::vector<std::pair<int, double>> objective;  // maximised

  int add_variable(std::string name, bool binary = false);
  void add_constraint(std::string name, std::vector<std::pair<int, double>> terms, Sense sense, double rhs);
  /// Index of a variable by name; throws DomainError if absent.
  int index(const std::string& name) const;
  /// Index of x_a for 0-based item a.
  int x_index(Item a) const { return a; }

 private:
  std::unordered_map<std::string, int> by_name_;
};

/// Throws DomainError unless every type's noise model is Mallows.
MipInstance build_mip(const Population& pop, int k, CardinalitySense cardinality = CardinalitySense::AtMost);

/// A feasible assignment with x fixed to `menu` and every inequality on the
/// probability chain made tight. Its objective equals the menu's exact welfare.
std::vector<double> mip_tight_point(const MipInstance& mip, const Population& pop, ItemSet menu);

double mip_objective(const MipInstance& mip, const std::vector<double>& values);

/// Largest violation of any row or bound (0 when feasible).
double mip_max_violation(const MipInstance& mip, const std::vector<double>& values);

/// Writes the instance in LP file format (Maximize / Subject To / Bounds / Binary / End).
void export_lp(const MipInstance& mip, std::ostream& out);
/// Throws std::runtime_error when the file cannot be written.
void export_lp(const MipInstance& mip, const std::string& path);

}  // namespace curation
