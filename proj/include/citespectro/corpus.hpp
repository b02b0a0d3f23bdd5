#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace citespectro {

inline constexpr int kMinYear = 1500;
inline constexpr int kMaxYear = 2100;

enum class DocType { Article, Review, Letter, Other };

// Case-insensitive match against article/review/letter; anything else is Other.
DocType parse_doc_type(std::string_view s);
std::string_view to_string(DocType t);

// Inclusive year interval.
struct YearRange {
  int lo = kMinYear;
  int hi = kMaxYear;

  bool contains(int y) const { return y >= lo && y <= hi; }
  int width() const { return hi - lo + 1; }
  friend bool operator==(const YearRange&, const YearRange&) = default;
};

// One citing document.
struct PublicationRecord {
  std::string record_id;
  std::string venue;
  int citing_year = 0;
  DocType doc_type = DocType::Other;
  std::vector<std::string> cited_refs_raw;
  std::optional<std::int64_t> times_cited;
  std::optional<std::string> first_author;
  // Bibliographic locators of the record itself (VL, BP, DI). Used to match
  // incoming citations to a venue's own papers.
  std::optional<std::string> volume;
  std::optional<std::string> page;
  std::optional<std::string> doi;

  friend bool operator==(const PublicationRecord&, const PublicationRecord&) = default;
};

struct IngestWarning {
  std::size_t line = 0;
  std::string message;
};

// Immutable set of records. Construction validates every record invariant and
// throws InvalidArgument on violation.
class Corpus {
 public:
  Corpus() = default;
  Corpus(std::vector<PublicationRecord> records, std::string source_description,
         std::vector<IngestWarning> warnings = {});

  const std::vector<PublicationRecord>& records() const { return records_; }
  const std::string& source_description() const { return source_description_; }
  const std::vector<IngestWarning>& ingest_warnings() const { return warnings_; }

  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }
  std::size_t total_raw_refs() const;

  // [min, max] citing year; nullopt when empty.
  std::optional<YearRange> citing_year_span() const;

 private:
  std::vector<PublicationRecord> records_;
  std::string source_description_;
  std::vector<IngestWarning> warnings_;
};

// WoS "Plain Text" tagged export. Throws MalformedFile when no FN/PT header
// is present; per-record defects become warnings.
Corpus parse_wos_plaintext(std::istream& in, std::string source_description = "wos-plain");

// WoS tab-delimited export; header row of field tags, CR cells split on "; ".
Corpus parse_wos_tabfile(std::istream& in, std::string source_description = "wos-tab");

// Test fixture CSV: record_id, venue, citing_year, doc_type, cited_refs
// (pipe separated). Optional columns: first_author, times_cited, volume,
// page, doi.
Corpus parse_test_csv(std::istream& in, std::string source_description = "test-csv");

// Serializes to the test CSV format (all optional columns included).
// Cited references containing '|' cannot be represented.
std::string write_test_csv(const Corpus& corpus);

Corpus filter_records(const Corpus& corpus, const std::set<DocType>& doc_types, YearRange years);

// Concatenates corpora in order. Records whose id was already seen are
// dropped with a warning.
Corpus merge_corpora(const std::vector<Corpus>& parts);

}  // namespace citespectro
