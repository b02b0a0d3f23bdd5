#include "citespectro/impact.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "citespectro/csv.hpp"
#include "citespectro/error.hpp"
#include "citespectro/text.hpp"

namespace citespectro {

CitationAgeDistribution age_distribution(std::span<const CitationPair> pairs, int reference_year,
                                         AgeDirection /*direction*/) {
  CitationAgeDistribution dist;
  dist.reference_year = reference_year;
  for (const auto& p : pairs) {
    if (p.citing_year != reference_year || !p.rpy || *p.rpy > reference_year) {
      ++dist.excluded;
      continue;
    }
    ++dist.counts_by_age[reference_year - *p.rpy];
    ++dist.total;
  }
  return dist;
}

double half_life(const CitationAgeDistribution& dist) {
  if (dist.total < 1) throw EmptyDistribution("half-life of an empty age distribution");
  const double half = static_cast<double>(dist.total) / 2.0;
  long long cumulative = 0;
  for (const auto& [age, count] : dist.counts_by_age) {
    if (count <= 0) continue;
    if (static_cast<double>(cumulative + count) >= half) {
      return static_cast<double>(age) + (half - static_cast<double>(cumulative)) / static_cast<double>(count);
    }
    cumulative += count;
  }
  // unreachable with a consistent total
  return static_cast<double>(dist.counts_by_age.rbegin()->first + 1);
}

long long Share::percent_tenths() const {
  // round(1000 * n / d) with halves going up, in integers
  return (2000 * numerator + denominator) / (2 * denominator);
}

std::string Share::percent() const {
  long long t = percent_tenths();
  return fmt::format("{}.{}%", t / 10, t % 10);
}

Share short_term_share(long long cites_in_window, long long total_cites) {
  if (total_cites == 0) throw ZeroTotal("share of a zero citation total");
  if (total_cites < 0 || cites_in_window < 0 || cites_in_window > total_cites) {
    throw InvalidArgument(fmt::format("invalid share {}/{}", cites_in_window, total_cites));
  }
  return {cites_in_window, total_cites};
}

double per_item_impact(long long cites_in_window, long long citable_items) {
  if (citable_items <= 0) throw ZeroTotal("per-item impact needs a positive item count");
  return static_cast<double>(cites_in_window) / static_cast<double>(citable_items);
}

VenueAliases VenueAliases::parse(std::string_view text_in) {
  VenueAliases aliases;
  std::size_t lineno = 0;
  for (auto line : text::split(text_in, "\n")) {
    ++lineno;
    line = text::trim(line);
    if (line.empty() || line.front() == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw MalformedFile(fmt::format("alias file line {}: expected 'abbrev = full name'", lineno));
    }
    auto abbrev = text::trim(line.substr(0, eq));
    auto full = text::trim(line.substr(eq + 1));
    if (abbrev.empty() || full.empty()) throw MalformedFile(fmt::format("alias file line {}: empty name", lineno));
    aliases.add(abbrev, full);
  }
  return aliases;
}

void VenueAliases::add(std::string_view abbrev, std::string_view full) {
  std::string a = text::normalize_title(abbrev);
  std::string f = text::normalize_title(full);
  std::vector<std::size_t> hits;
  for (std::size_t i = 0; i < groups_.size(); ++i) {
    if (groups_[i].contains(a) || groups_[i].contains(f)) hits.push_back(i);
  }
  if (hits.empty()) {
    groups_.push_back({a, f});
    return;
  }
  auto& target = groups_[hits.front()];
  target.insert(a);
  target.insert(f);
  for (auto it = hits.rbegin(); it != hits.rend() && *it != hits.front(); ++it) {
    target.insert(groups_[*it].begin(), groups_[*it].end());
    groups_.erase(groups_.begin() + static_cast<std::ptrdiff_t>(*it));
  }
}

std::set<std::string> VenueAliases::names_for(std::string_view venue) const {
  std::string key = text::normalize_title(venue);
  for (const auto& g : groups_) {
    if (g.contains(key)) return g;
  }
  return {key};
}

namespace {

bool ref_names_venue(const CitedRef& ref, const std::set<std::string>& names) {
  return ref.source && names.contains(*ref.source);
}

bool record_in_venue(const PublicationRecord& rec, const std::set<std::string>& names) {
  return names.contains(text::normalize_title(rec.venue));
}

long long count_ages(const CitationAgeDistribution& d, int lo, int hi) {
  long long n = 0;
  for (auto it = d.counts_by_age.lower_bound(lo); it != d.counts_by_age.end() && it->first <= hi; ++it) n += it->second;
  return n;
}

}  // namespace

JournalYearMetrics journal_year_metrics(const ReferenceIndex& index, std::string_view venue, int year,
                                        const VenueAliases& aliases) {
  const auto names = aliases.names_for(venue);
  const auto& records = index.corpus().records();
  std::vector<CitationPair> cited, citing;
  bool venue_seen = false;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& rec = records[i];
    const bool own = record_in_venue(rec, names);
    venue_seen = venue_seen || own;
    for (auto id : index.refs_of(i)) {
      const auto& ref = index.ref(id);
      if (ref_names_venue(ref, names)) {
        venue_seen = true;
        cited.push_back({rec.citing_year, ref.rpy});
      }
      if (own) citing.push_back({rec.citing_year, ref.rpy});
    }
  }
  if (!venue_seen) throw VenueNotFound("venue not found in corpus: " + std::string(venue));

  JournalYearMetrics m;
  m.venue = std::string(venue);
  m.year = year;
  m.cited = age_distribution(cited, year, AgeDirection::Cited);
  m.citing = age_distribution(citing, year, AgeDirection::Citing);
  m.total_cites = m.cited.total;
  if (m.total_cites > 0) {
    m.share_2yr = short_term_share(count_ages(m.cited, 1, 2), m.total_cites);
    m.share_5yr = short_term_share(count_ages(m.cited, 1, 5), m.total_cites);
    m.share_gt10yr = short_term_share(count_ages(m.cited, 11, kMaxYear), m.total_cites);
    m.cited_half_life = half_life(m.cited);
  }
  if (m.citing.total > 0) m.citing_half_life = half_life(m.citing);
  try {
    m.immediacy = immediacy_counts(index, venue, year, aliases);
  } catch (const NoPapers&) {
  }
  return m;
}

JournalYearMetrics journal_year_metrics(const Corpus& corpus, std::string_view venue, int year,
                                        const VenueAliases& aliases) {
  ReferenceIndex index(corpus);
  return journal_year_metrics(index, venue, year, aliases);
}

double immediacy_index(const ReferenceIndex& index, std::string_view venue, int year, const VenueAliases& aliases) {
  return immediacy_counts(index, venue, year, aliases).fraction();
}

Share immediacy_counts(const ReferenceIndex& index, std::string_view venue, int year, const VenueAliases& aliases) {
  const auto names = aliases.names_for(venue);
  const auto& records = index.corpus().records();
  std::vector<const PublicationRecord*> papers;
  for (const auto& rec : records) {
    if (rec.citing_year == year && record_in_venue(rec, names)) papers.push_back(&rec);
  }
  if (papers.empty()) throw NoPapers(fmt::format("venue {} has no papers in {}", venue, year));

  auto matches = [](const CitedRef& ref, const PublicationRecord& paper) {
    if (ref.doi && paper.doi) return text::to_lower(*ref.doi) == text::to_lower(*paper.doi);
    if (paper.volume && paper.page) return ref.volume == paper.volume && ref.page == paper.page;
    if (paper.doi || paper.volume || paper.page) return false;
    return paper.first_author && *paper.first_author == ref.first_author;
  };

  std::vector<bool> cited(papers.size(), false);
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (records[i].citing_year != year) continue;
    for (auto id : index.refs_of(i)) {
      const auto& ref = index.ref(id);
      if (ref.rpy != year || !ref_names_venue(ref, names)) continue;
      for (std::size_t p = 0; p < papers.size(); ++p) {
        if (!cited[p] && matches(ref, *papers[p])) cited[p] = true;
      }
    }
  }
  auto n = std::count(cited.begin(), cited.end(), true);
  return {static_cast<long long>(n), static_cast<long long>(papers.size())};
}

double immediacy_index(const Corpus& corpus, std::string_view venue, int year, const VenueAliases& aliases) {
  ReferenceIndex index(corpus);
  return immediacy_index(index, venue, year, aliases);
}

namespace {
std::string optional_years(const std::optional<double>& v) { return v ? fmt::format("{:.2f}", *v) : ""; }
}  // namespace

std::string metrics_csv(std::span<const JournalYearMetrics> rows) {
  std::string out = "venue,year,total_cites,share_2yr,share_5yr,share_gt10yr,cited_half_life,citing_half_life,immediacy\n";
  for (const auto& m : rows) {
    out += csv::join({m.venue, std::to_string(m.year), std::to_string(m.total_cites), m.share_2yr.percent(),
                      m.share_5yr.percent(), m.share_gt10yr.percent(), optional_years(m.cited_half_life),
                      optional_years(m.citing_half_life), m.immediacy ? m.immediacy->percent() : ""});
    out += '\n';
  }
  return out;
}

}  // namespace citespectro
