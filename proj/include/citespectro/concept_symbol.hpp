#pragma once

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "citespectro/reference.hpp"

namespace citespectro {

// Lowercased, periods and commas dropped, trailing one-letter initials
// joined: "Merton R. K." -> "merton rk".
std::string author_key(std::string_view name);

// Prefix mode: "merton" matches "merton rk" and "merton r"; "merton r"
// matches "merton rk". Exact mode compares keys for equality.
bool author_matches(std::string_view query_key, std::string_view candidate_key, bool exact = false);

struct SymbolReport {
  std::string author_query;  // as a key
  long long n_refs = 0;
  long long n_citing_docs = 0;
  long long corpus_docs = 0;
  double doc_share = 0;
  std::map<std::pair<int, std::string>, long long> per_year_per_venue;
  // citing record's first author -> number of their documents citing the symbol
  std::map<std::string, long long> citing_authors;
};

// Scans every parsed reference for a first author matching the query.
// Records without a first author are not tallied in citing_authors.
SymbolReport symbol_report(const ReferenceIndex& index, std::string_view author_query, bool exact = false);
SymbolReport symbol_report(const Corpus& corpus, std::string_view author_query, bool exact = false);

// Citing authors with at least min_count documents, most documents first,
// ties alphabetical. Throws InvalidArgument when min_count < 1.
std::vector<std::pair<std::string, long long>> frequent_citers(const SymbolReport& report, long long min_count = 3);

// "citing_year,venue,count" sorted by (year, venue).
std::string symbol_trend_csv(const SymbolReport& report);
std::map<std::pair<int, std::string>, long long> parse_symbol_trend_csv(std::string_view text);

// "author,documents" in frequent_citers order.
std::string citers_csv(const std::vector<std::pair<std::string, long long>>& citers);

}  // namespace citespectro
