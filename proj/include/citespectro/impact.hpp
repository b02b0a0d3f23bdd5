#pragma once

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "citespectro/corpus.hpp"
#include "citespectro/reference.hpp"

namespace citespectro {

// A citation from a document published in citing_year to a work published in rpy.
struct CitationPair {
  int citing_year = 0;
  std::optional<int> rpy;
};

enum class AgeDirection { Cited, Citing };

struct CitationAgeDistribution {
  int reference_year = 0;
  std::map<int, long long> counts_by_age;
  long long total = 0;
  // Pairs not counted: other citing year, missing rpy or negative age.
  long long excluded = 0;
};

// Keeps pairs whose citing year is reference_year and buckets them by
// reference_year - rpy. The arithmetic is the same in both directions; the
// direction only records which side of the venue the pairs describe.
CitationAgeDistribution age_distribution(std::span<const CitationPair> pairs, int reference_year,
                                         AgeDirection direction = AgeDirection::Cited);

// Median citation age. Age bucket a covers [a, a+1) and is filled linearly,
// so everything at age 0 gives 0.5. Throws EmptyDistribution.
double half_life(const CitationAgeDistribution& dist);

// numerator / denominator, rounded to tenths of a percent half up.
struct Share {
  long long numerator = 0;
  long long denominator = 1;

  double fraction() const { return static_cast<double>(numerator) / static_cast<double>(denominator); }
  long long percent_tenths() const;
  std::string percent() const;  // "14.7%"
};

// Throws ZeroTotal when total_cites is 0, InvalidArgument when the window
// count is negative or exceeds the total.
Share short_term_share(long long cites_in_window, long long total_cites);

// Classic per-item ratio, for when citable-item counts are known.
double per_item_impact(long long cites_in_window, long long citable_items);

// Abbreviation <-> full title table. Text format: one "abbrev = full name"
// per line, '#' starts a comment.
class VenueAliases {
 public:
  VenueAliases() = default;
  static VenueAliases parse(std::string_view text);

  void add(std::string_view abbrev, std::string_view full);

  // Every normalized name equivalent to `venue`, including itself.
  std::set<std::string> names_for(std::string_view venue) const;

 private:
  std::vector<std::set<std::string>> groups_;
};

struct JournalYearMetrics {
  std::string venue;
  int year = 0;
  long long total_cites = 0;
  Share share_2yr;  // cites to items 1-2 years old / total
  Share share_5yr;  // 1-5 years old
  Share share_gt10yr;
  std::optional<double> cited_half_life;
  std::optional<double> citing_half_life;
  std::optional<Share> immediacy;  // cited papers / papers
  CitationAgeDistribution cited;
  CitationAgeDistribution citing;
};

// Cited side: references (from any record published in `year`) whose source
// names the venue. Citing side: references made by the venue's own records
// published in `year`. Throws VenueNotFound when the venue occurs on neither side.
JournalYearMetrics journal_year_metrics(const ReferenceIndex& index, std::string_view venue, int year,
                                        const VenueAliases& aliases = {});
JournalYearMetrics journal_year_metrics(const Corpus& corpus, std::string_view venue, int year,
                                        const VenueAliases& aliases = {});

// Fraction of the venue's year-y papers cited at least once within year y.
// A reference matches a paper by DOI, else by volume and page, else by first
// author when the paper has no locators. Throws NoPapers.
double immediacy_index(const ReferenceIndex& index, std::string_view venue, int year,
                       const VenueAliases& aliases = {});
Share immediacy_counts(const ReferenceIndex& index, std::string_view venue, int year, const VenueAliases& aliases = {});
double immediacy_index(const Corpus& corpus, std::string_view venue, int year, const VenueAliases& aliases = {});

std::string metrics_csv(std::span<const JournalYearMetrics> rows);

}  // namespace citespectro
