#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "citespectro/corpus.hpp"

namespace citespectro {

// One parsed cited reference, e.g. "hirsch je, 2005, p natl acad sci usa, v102, p16569".
struct CitedRef {
  std::string raw;           // verbatim input
  std::string first_author;  // normalized
  std::optional<int> rpy;    // referenced publication year
  std::optional<std::string> source;
  std::optional<std::string> volume;
  std::optional<std::string> page;
  std::optional<std::string> doi;

  friend bool operator==(const CitedRef&, const CitedRef&) = default;
};

// Total: never throws, defects surface as absent fields. The year is the
// leftmost segment among the 2nd and 3rd that is exactly four digits and lies
// in [1500, citing_year + 1]; the segment after it is the source.
CitedRef parse_cited_ref(std::string_view raw, int citing_year);

struct ExtractedRef {
  std::string record_id;
  int citing_year = 0;
  CitedRef ref;
};

// One entry per raw reference, in corpus order.
std::vector<ExtractedRef> extract_all_refs(const Corpus& corpus);

// Parsed view of a corpus in which each distinct parse result is stored once
// and records refer to it by id. The corpus must outlive the index.
class ReferenceIndex {
 public:
  using RefId = std::uint32_t;

  explicit ReferenceIndex(const Corpus& corpus);

  const Corpus& corpus() const { return *corpus_; }
  const std::vector<CitedRef>& unique_refs() const { return unique_; }
  const CitedRef& ref(RefId id) const { return unique_[id]; }

  // Parallel to corpus().records(): ids of that record's references in order.
  const std::vector<RefId>& refs_of(std::size_t record_index) const { return per_record_[record_index]; }

  // Number of occurrences of each unique ref across the corpus.
  const std::vector<std::size_t>& occurrences() const { return occurrences_; }
  std::size_t total_refs() const { return total_; }

 private:
  const Corpus* corpus_;
  std::vector<CitedRef> unique_;
  std::vector<std::vector<RefId>> per_record_;
  std::vector<std::size_t> occurrences_;
  std::size_t total_ = 0;
};

}  // namespace citespectro
