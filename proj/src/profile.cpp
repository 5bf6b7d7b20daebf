#include "curation/profile.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include "curation/errors.hpp"

namespace curation {

double PreferenceProfile::total() const { return std::accumulate(counts.begin(), counts.end(), 0.0); }

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_count(const std::string& tok, std::size_t line) {
  std::size_t used = 0;
  double c = 0.0;
  try {
    c = std::stod(tok, &used);
  } catch (const std::exception&) {
    throw ParseError("invalid count '" + tok + "'", line);
  }
  if (used != tok.size()) throw ParseError("invalid count '" + tok + "'", line);
  if (!(c > 0.0)) throw ParseError("count must be positive", line);
  return c;
}

int parse_label(const std::string& tok, std::size_t line) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(tok, &used);
  } catch (const std::exception&) {
    throw ParseError("invalid item label '" + tok + "'", line);
  }
  if (used != tok.size()) throw ParseError("invalid item label '" + tok + "'", line);
  return v;
}

std::vector<std::string> split(const std::string& s, bool csv) {
  std::vector<std::string> out;
  if (csv) {
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
  } else {
    std::istringstream ss(s);
    std::string tok;
    while (ss >> tok) out.push_back(tok);
  }
  return out;
}

}  // namespace

PreferenceProfile load_profile(std::istream& in, ProfileFormat format) {
  PreferenceProfile prof;
  std::string raw;
  std::size_t line_no = 0;
  bool csv = format == ProfileFormat::Csv;
  bool header_pending = csv;
  bool decided = format != ProfileFormat::Auto;
  std::size_t first_line = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    if (!decided) {
      csv = line.rfind("count", 0) == 0;
      header_pending = csv;
      decided = true;
    }
    if (header_pending) {
      const auto cells = split(line, true);
      if (cells.empty() || cells.front() != "count") throw ParseError("CSV header must start with 'count'", line_no);
      header_pending = false;
      continue;
    }
    const auto toks = split(line, csv);
    if (toks.size() < 2) throw ParseError("expected a count followed by a ranking", line_no);
    const double c = parse_count(toks.front(), line_no);
    std::vector<int> labels;
    for (std::size_t t = 1; t < toks.size(); ++t) labels.push_back(parse_label(toks[t], line_no));
    const int m = static_cast<int>(labels.size());
    if (prof.m == 0) {
      prof.m = m;
      first_line = line_no;
    } else if (m != prof.m) {
      throw DimensionError("line " + std::to_string(line_no) + ": ranking has " + std::to_string(m) +
                           " items, expected " + std::to_string(prof.m) + " (from line " +
                           std::to_string(first_line) + ")");
    }
    try {
      prof.rankings.push_back(Ranking::from_one_indexed(labels));
    } catch (const DomainError& e) {
      throw ParseError(e.what(), line_no);
    }
    prof.counts.push_back(c);
  }
  if (prof.rankings.empty()) throw DomainError("profile contains no rankings");
  const double total = prof.total();
  for (double c : prof.counts) prof.fractions.push_back(c / total);
  return prof;
}

PreferenceProfile load_profile_file(const std::string& path, ProfileFormat format) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open profile " + path);
  return load_profile(in, format);
}

PreferenceProfile sushi_fixture() {
  static const char* const kRows =
      "126 4 5 2 1 3\n120 4 5 1 2 3\n119 4 5 2 3 1\n119 2 1 3 5 4\n119 2 3 1 5 4\n"
      "115 1 2 3 5 4\n94 5 2 3 1 4\n81 5 4 1 2 3\n78 1 4 5 2 3\n77 4 1 5 2 3\n"
      "75 2 3 1 4 5\n74 4 2 5 3 1\n73 3 2 1 5 4\n71 5 2 1 3 4\n70 5 4 2 1 3\n"
      "67 2 5 3 1 4\n66 2 5 1 3 4\n66 1 2 3 4 5\n65 5 4 2 3 1\n64 2 5 4 3 1\n"
      "64 4 5 1 3 2\n64 2 3 5 1 4\n63 4 5 3 2 1\n63 5 2 3 4 1\n62 2 1 3 4 5\n"
      "60 5 1 2 3 4\n59 4 1 5 3 2\n56 1 3 2 5 4\n56 1 2 4 5 3\n55 4 2 5 1 3\n"
      "54 2 1 5 4 3\n54 4 1 2 5 3\n54 3 1 2 5 4\n";
  std::istringstream in(kRows);
  return load_profile(in, ProfileFormat::Text);
}

Ranking modal_ranking(const PreferenceProfile& profile) {
  if (profile.rankings.empty()) throw DomainError("modal_ranking: empty profile");
  std::size_t best = 0;
  for (std::size_t r = 1; r < profile.size(); ++r) {
    if (profile.counts[r] > profile.counts[best] ||
        (profile.counts[r] == profile.counts[best] && profile.rankings[r] < profile.rankings[best]))
      best = r;
  }
  return profile.rankings[best];
}

Population profile_population(const PreferenceProfile& profile, double phi_h, const ValueProfile& values) {
  std::vector<HumanType> types;
  for (std::size_t r = 0; r < profile.size(); ++r)
    types.push_back(HumanType::mallows(profile.rankings[r], phi_h, values, profile.fractions[r]));
  return Population(std::move(types));
}

}  // namespace curation
