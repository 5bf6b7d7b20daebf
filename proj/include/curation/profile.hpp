#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "curation/population.hpp"

namespace curation {

/// Weighted list of complete rankings (e.g. survey responses).
struct PreferenceProfile {
  int m = 0;
  std::vector<Ranking> rankings;
  std::vector<double> counts;     // as read (counts or fractions)
  std::vector<double> fractions;  // counts normalised to sum to one

  std::size_t size() const { return rankings.size(); }
  double total() const;
};

enum class ProfileFormat { Auto, Text, Csv };

/// Text: one `<count> <r1> ... <rm>` line per ranking, 1-indexed items, `#` comments.
/// CSV: header row whose first cell is `count`, then `count,r1,...,rm` rows.
/// Auto picks CSV when the first non-comment line starts with `count`.
/// Throws ParseError (with line number), DimensionError for mixed m, DomainError when empty.
PreferenceProfile load_profile(std::istream& in, ProfileFormat format = ProfileFormat::Auto);
PreferenceProfile load_profile_file(const std::string& path, ProfileFormat format = ProfileFormat::Auto);

/// The 33 most frequent sushi rankings over five items (out of 5000 respondents).
PreferenceProfile sushi_fixture();
inline constexpr double kSushiRespondents = 5000.0;

/// Most frequent ranking; equal counts resolved by the lexicographically smallest ranking.
Ranking modal_ranking(const PreferenceProfile& profile);

/// One Mallows(phi_h) type per ranking, weighted by its fraction.
Population profile_population(const PreferenceProfile& profile, double phi_h, const ValueProfile& values);

}  // namespace curation
