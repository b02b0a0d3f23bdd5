#include "citespectro/concept_symbol.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "citespectro/csv.hpp"
#include "citespectro/error.hpp"
#include "citespectro/text.hpp"

namespace citespectro {

std::string author_key(std::string_view name) {
  std::string lowered = text::to_lower(name);
  std::string stripped;
  stripped.reserve(lowered.size());
  for (char c : lowered) {
    if (c == '.') continue;
    stripped.push_back(c == ',' ? ' ' : c);
  }
  auto tokens = text::split(text::collapse_whitespace(stripped), " ");
  std::size_t keep = tokens.size();
  while (keep > 1 && tokens[keep - 1].size() == 1) --keep;
  std::string key;
  for (std::size_t i = 0; i < keep; ++i) {
    if (i > 0) key.push_back(' ');
    key.append(tokens[i]);
  }
  if (keep < tokens.size()) {
    key.push_back(' ');
    for (std::size_t i = keep; i < tokens.size(); ++i) key.append(tokens[i]);
  }
  return key;
}

bool author_matches(std::string_view query, std::string_view candidate, bool exact) {
  if (query.empty()) return false;
  if (candidate == query) return true;
  if (exact || candidate.size() <= query.size() || candidate.substr(0, query.size()) != query) return false;
  if (candidate[query.size()] == ' ') return true;
  // a query with initials also matches longer initials
  return query.find(' ') != std::string_view::npos;
}

SymbolReport symbol_report(const ReferenceIndex& index, std::string_view author_query, bool exact) {
  SymbolReport report;
  report.author_query = author_key(author_query);
  if (report.author_query.empty()) throw InvalidArgument("author query is empty");
  const auto& records = index.corpus().records();
  report.corpus_docs = static_cast<long long>(records.size());

  std::vector<signed char> hit(index.unique_refs().size(), -1);
  for (std::size_t i = 0; i < records.size(); ++i) {
    long long refs_here = 0;
    for (auto id : index.refs_of(i)) {
      if (hit[id] < 0) hit[id] = author_matches(report.author_query, author_key(index.ref(id).first_author), exact);
      if (hit[id]) ++refs_here;
    }
    if (refs_here == 0) continue;
    const auto& rec = records[i];
    report.n_refs += refs_here;
    ++report.n_citing_docs;
    report.per_year_per_venue[{rec.citing_year, rec.venue}] += refs_here;
    if (rec.first_author && !rec.first_author->empty()) ++report.citing_authors[*rec.first_author];
  }
  report.doc_share = report.corpus_docs == 0 ? 0.0
                                             : static_cast<double>(report.n_citing_docs) /
                                                   static_cast<double>(report.corpus_docs);
  return report;
}

SymbolReport symbol_report(const Corpus& corpus, std::string_view author_query, bool exact) {
  ReferenceIndex index(corpus);
  return symbol_report(index, author_query, exact);
}

std::vector<std::pair<std::string, long long>> frequent_citers(const SymbolReport& report, long long min_count) {
  if (min_count < 1) throw InvalidArgument("min_count must be at least 1");
  std::vector<std::pair<std::string, long long>> out;
  for (const auto& [author, count] : report.citing_authors) {
    if (count >= min_count) out.emplace_back(author, count);
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  return out;
}

std::string symbol_trend_csv(const SymbolReport& report) {
  std::string out = "citing_year,venue,count\n";
  for (const auto& [key, count] : report.per_year_per_venue) {
    out += csv::join({std::to_string(key.first), key.second, std::to_string(count)});
    out += '\n';
  }
  return out;
}

std::map<std::pair<int, std::string>, long long> parse_symbol_trend_csv(std::string_view text_in) {
  auto rows = csv::parse(text_in);
  if (rows.empty() || rows[0] != csv::Row{"citing_year", "venue", "count"}) {
    throw MalformedFile("symbol trend CSV: expected header citing_year,venue,count");
  }
  std::map<std::pair<int, std::string>, long long> out;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (row.size() == 1 && row[0].empty()) continue;
    auto year = row.size() == 3 ? text::parse_int(row[0]) : std::nullopt;
    auto count = row.size() == 3 ? text::parse_int(row[2]) : std::nullopt;
    if (!year || !count) throw MalformedFile(fmt::format("symbol trend CSV line {}: malformed row", i + 1));
    out[{static_cast<int>(*year), row[1]}] = *count;
  }
  return out;
}

std::string citers_csv(const std::vector<std::pair<std::string, long long>>& citers) {
  std::string out = "author,documents\n";
  for (const auto& [author, count] : citers) {
    out += csv::join({author, std::to_string(count)});
    out += '\n';
  }
  return out;
}

}  // namespace citespectro
