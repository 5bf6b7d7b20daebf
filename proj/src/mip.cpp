#include "curation/mip.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "curation/errors.hpp"

namespace curation {

int MipInstance::add_variable(std::string name, bool binary) {
  const int idx = static_cast<int>(variables.size());
  by_name_.emplace(name, idx);
  variables.push_back(MipVariable{std::move(name), 0.0, 1.0, binary});
  return idx;
}

void MipInstance::add_constraint(std::string name, std::vector<std::pair<int, double>> terms, Sense sense, double rhs) {
  constraints.push_back(MipConstraint{std::move(name), std::move(terms), sense, rhs});
}

int MipInstance::index(const std::string& name) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end()) throw DomainError("unknown MIP variable " + name);
  return it->second;
}

namespace {

// Names are 1-indexed: type i, item label a, position s, step t.
std::string w_name(int i, Item a, int s, int t) { return fmt::format("type{}_W_{}_{}_{}", i, a + 1, s, t); }
std::string y_name(int i, Item a, int s, int t) { return fmt::format("type{}_y_{}_{}_{}", i, a + 1, s, t); }
std::string z_name(int i, int s, int t) { return fmt::format("type{}_z_{}_{}", i, s, t); }
std::string q_name(int i, int t) { return fmt::format("type{}_q_{}", i, t); }

const MallowsModel& mallows_of(const HumanType& h) {
  const auto* mm = std::get_if<MallowsModel>(&h.noise());
  if (mm == nullptr) throw DomainError("build_mip: every human type must use a Mallows model");
  return *mm;
}

void add_type_block(MipInstance& mip, const HumanType& h, int i) {
  const MallowsModel& model = mallows_of(h);
  const Ranking& sigma = model.center();
  const InsertionTable table = build_insertion_table(model);
  const int m = mip.m;
  const std::string pre = fmt::format("type{}_", i);

  for (int t = 1; t <= m; ++t) {
    const Item xt = sigma.at(t - 1);
    const int x_var = mip.x_index(xt);

    // Items inserted earlier keep or shift their position.
    for (int prev = 1; prev < t; ++prev) {
      const Item a = sigma.at(prev - 1);
      for (int s = 1; s <= t; ++s) {
        const int w = mip.add_variable(w_name(i, a, s, t));
        std::vector<std::pair<int, double>> rec{{w, 1.0}};
        if (s <= t - 1) rec.emplace_back(mip.index(w_name(i, a, s, t - 1)), -(1.0 - table.gamma(t, s)));
        if (s >= 2) {
          const int y = mip.add_variable(y_name(i, a, s, t));
          rec.emplace_back(y, -1.0);
          mip.add_constraint(fmt::format("{}yshift_{}_{}_{}", pre, a + 1, s, t),
                             {{y, 1.0}, {mip.index(w_name(i, a, s - 1, t - 1)), -table.gamma(t, s - 1)}},
                             Sense::LessEqual, 0.0);
          mip.add_constraint(fmt::format("{}ymenu_{}_{}_{}", pre, a + 1, s, t), {{y, 1.0}, {x_var, 1.0}},
                             Sense::LessEqual, 1.0);
        }
        mip.add_constraint(fmt::format("{}wrec_{}_{}_{}", pre, a + 1, s, t), std::move(rec), Sense::Equal, 0.0);
      }
    }

    // The newly inserted item becomes first among the menu at position s.
    const int q_prev = t >= 2 ? mip.index(q_name(i, t - 1)) : -1;
    for (int s = 1; s <= t; ++s) {
      const int z = mip.add_variable(z_name(i, s, t));
      const int w = mip.add_variable(w_name(i, xt, s, t));
      mip.add_constraint(fmt::format("{}wnew_{}_{}", pre, s, t), {{w, 1.0}, {z, -1.0}}, Sense::Equal, 0.0);
      const double p = table.p(t, s);
      std::vector<std::pair<int, double>> row{{z, 1.0}};
      for (int prev = 1; prev < t; ++prev)
        for (int l = s; l <= t - 1; ++l) row.emplace_back(mip.index(w_name(i, sigma.at(prev - 1), l, t - 1)), -p);
      double rhs = 0.0;
      if (q_prev >= 0)
        row.emplace_back(q_prev, -p);
      else
        rhs = p;  // q_0 = 1
      mip.add_constraint(fmt::format("{}zseed_{}_{}", pre, s, t), std::move(row), Sense::LessEqual, rhs);
      mip.add_constraint(fmt::format("{}zmenu_{}_{}", pre, s, t), {{z, 1.0}, {x_var, -p}}, Sense::LessEqual, 0.0);
    }

    // q_t = 1 iff none of the first t center items is in the menu.
    const int q = mip.add_variable(q_name(i, t));
    std::vector<std::pair<int, double>> lower{{q, 1.0}};
    for (int r = 1; r <= t; ++r) {
      const int xr = mip.x_index(sigma.at(r - 1));
      mip.add_constraint(fmt::format("{}qup_{}_{}", pre, t, r), {{q, 1.0}, {xr, 1.0}}, Sense::LessEqual, 1.0);
      lower.emplace_back(xr, 1.0);
    }
    mip.add_constraint(fmt::format("{}qlow_{}", pre, t), std::move(lower), Sense::GreaterEqual, 1.0);
  }

  for (int pos = 0; pos < m; ++pos) {
    const Item a = sigma.at(pos);
    const double coef = h.weight() * h.utility(a);
    if (coef == 0.0) continue;
    for (int s = 1; s <= m; ++s) mip.objective.emplace_back(mip.index(w_name(i, a, s, m)), coef);
  }
}

}  // namespace

MipInstance build_mip(const Population& pop, int k, CardinalitySense cardinality) {
  MipInstance mip;
  mip.m = pop.items();
  mip.k = k;
  mip.n = static_cast<int>(pop.size());
  if (k < 1 || k > mip.m) throw DomainError("build_mip: k must satisfy 1 <= k <= m");
  for (const auto& h : pop.types()) mallows_of(h);
  std::vector<std::pair<int, double>> card;
  for (Item a = 0; a < mip.m; ++a) card.emplace_back(mip.add_variable(fmt::format("x_{}", a + 1), true), 1.0);
  mip.add_constraint("cardinality", std::move(card),
                     cardinality == CardinalitySense::AtMost ? Sense::LessEqual : Sense::Equal, k);
  for (std::size_t i = 0; i < pop.size(); ++i) add_type_block(mip, pop[i], static_cast<int>(i) + 1);
  return mip;
}

std::vector<double> mip_tight_point(const MipInstance& mip, const Population& pop, ItemSet menu) {
  if (pop.items() != mip.m || static_cast<int>(pop.size()) != mip.n)
    throw DimensionError("mip_tight_point: population does not match the instance");
  std::vector<double> v(mip.variables.size(), 0.0);
  for (Item a = 0; a < mip.m; ++a) v[static_cast<std::size_t>(mip.x_index(a))] = menu.contains(a) ? 1.0 : 0.0;
  auto set = [&](const std::string& name, double value) { v[static_cast<std::size_t>(mip.index(name))] = value; };
  auto get = [&](const std::string& name) { return v[static_cast<std::size_t>(mip.index(name))]; };

  for (std::size_t ti = 0; ti < pop.size(); ++ti) {
    const int i = static_cast<int>(ti) + 1;
    const MallowsModel& model = mallows_of(pop[ti]);
    const Ranking& sigma = model.center();
    const InsertionTable table = build_insertion_table(model);
    double q_prev = 1.0;
    for (int t = 1; t <= mip.m; ++t) {
      const bool in_menu = menu.contains(sigma.at(t - 1));
      for (int prev = 1; prev < t; ++prev) {
        const Item a = sigma.at(prev - 1);
        for (int s = 1; s <= t; ++s) {
          double w = s <= t - 1 ? (1.0 - table.gamma(t, s)) * get(w_name(i, a, s, t - 1)) : 0.0;
          if (s >= 2) {
            const double y = in_menu ? 0.0 : table.gamma(t, s - 1) * get(w_name(i, a, s - 1, t - 1));
            set(y_name(i, a, s, t), y);
            w += y;
          }
          set(w_name(i, a, s, t), w);
        }
      }
      for (int s = 1; s <= t; ++s) {
        double z = 0.0;
        if (in_menu) {
          double acc = q_prev;
          for (int prev = 1; prev < t; ++prev)
            for (int l = s; l <= t - 1; ++l) acc += get(w_name(i, sigma.at(prev - 1), l, t - 1));
          z = table.p(t, s) * acc;
        }
        set(z_name(i, s, t), z);
        set(w_name(i, sigma.at(t - 1), s, t), z);
      }
      q_prev = in_menu ? 0.0 : q_prev;
      set(q_name(i, t), q_prev);
    }
  }
  return v;
}

double mip_objective(const MipInstance& mip, const std::vector<double>& values) {
  double obj = 0.0;
  for (const auto& [idx, c] : mip.objective) obj += c * values[static_cast<std::size_t>(idx)];
  return obj;
}

double mip_max_violation(const MipInstance& mip, const std::vector<double>& values) {
  double worst = 0.0;
  for (std::size_t j = 0; j < mip.variables.size(); ++j) {
    worst = std::max(worst, mip.variables[j].lower - values[j]);
    worst = std::max(worst, values[j] - mip.variables[j].upper);
    if (mip.variables[j].binary) worst = std::max(worst, std::abs(values[j] - std::round(values[j])));
  }
  for (const auto& row : mip.constraints) {
    double lhs = 0.0;
    for (const auto& [idx, c] : row.terms) lhs += c * values[static_cast<std::size_t>(idx)];
    switch (row.sense) {
      case Sense::LessEqual: worst = std::max(worst, lhs - row.rhs); break;
      case Sense::GreaterEqual: worst = std::max(worst, row.rhs - lhs); break;
      case Sense::Equal: worst = std::max(worst, std::abs(lhs - row.rhs)); break;
    }
  }
  return worst;
}

namespace {

void write_terms(std::ostream& out, const MipInstance& mip, const std::vector<std::pair<int, double>>& terms) {
  int on_line = 0;
  for (const auto& [idx, c] : terms) {
    if (on_line == 6) {
      out << "\n   ";
      on_line = 0;
    }
    fmt::print(out, " {} {:.17g} {}", c < 0 ? '-' : '+', std::abs(c), mip.variables[static_cast<std::size_t>(idx)].name);
    ++on_line;
  }
}

}  // namespace

void export_lp(const MipInstance& mip, std::ostream& out) {
  fmt::print(out, "\\ welfare-maximising menu: m={} k={} types={}\n", mip.m, mip.k, mip.n);
  out << "Maximize\n obj:";
  if (mip.objective.empty())
    out << " 0 x_1";
  else
    write_terms(out, mip, mip.objective);
  out << "\nSubject To\n";
  for (const auto& row : mip.constraints) {
    out << ' ' << row.name << ':';
    write_terms(out, mip, row.terms);
    const char* op = row.sense == Sense::LessEqual ? "<=" : row.sense == Sense::GreaterEqual ? ">=" : "=";
    fmt::print(out, " {} {:.17g}\n", op, row.rhs);
  }
  out << "Bounds\n";
  for (const auto& v : mip.variables)
    if (!v.binary) fmt::print(out, " {:.17g} <= {} <= {:.17g}\n", v.lower, v.name, v.upper);
  out << "Binary\n";
  for (const auto& v : mip.variables)
    if (v.binary) out << ' ' << v.name << '\n';
  out << "End\n";
}

void export_lp(const MipInstance& mip, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  export_lp(mip, out);
  if (!out) throw std::runtime_error("failed writing " + path);
}

}  // namespace curation
