#include "citespectro/corpus.hpp"

#include <algorithm>
#include <unordered_set>

#include <fmt/format.h>

#include "citespectro/csv.hpp"
#include "citespectro/error.hpp"
#include "citespectro/text.hpp"

namespace citespectro {

DocType parse_doc_type(std::string_view s) {
  std::string key = text::to_lower(text::trim(s));
  if (key == "article") return DocType::Article;
  if (key == "review") return DocType::Review;
  if (key == "letter") return DocType::Letter;
  return DocType::Other;
}

std::string_view to_string(DocType t) {
  switch (t) {
    case DocType::Article: return "Article";
    case DocType::Review: return "Review";
    case DocType::Letter: return "Letter";
    case DocType::Other: return "Other";
  }
  return "Other";
}

Corpus::Corpus(std::vector<PublicationRecord> records, std::string source_description,
               std::vector<IngestWarning> warnings)
    : records_(std::move(records)),
      source_description_(std::move(source_description)),
      warnings_(std::move(warnings)) {
  std::unordered_set<std::string_view> ids;
  ids.reserve(records_.size());
  for (const auto& r : records_) {
    if (r.citing_year < kMinYear || r.citing_year > kMaxYear) {
      throw InvalidArgument(fmt::format("record {}: citing year {} outside [{}, {}]", r.record_id,
                                        r.citing_year, kMinYear, kMaxYear));
    }
    if (!ids.insert(r.record_id).second) {
      throw InvalidArgument("duplicate record id " + r.record_id);
    }
    for (const auto& ref : r.cited_refs_raw) {
      if (ref.empty()) throw InvalidArgument("record " + r.record_id + " has an empty cited reference");
    }
  }
}

std::size_t Corpus::total_raw_refs() const {
  std::size_t n = 0;
  for (const auto& r : records_) n += r.cited_refs_raw.size();
  return n;
}

std::optional<YearRange> Corpus::citing_year_span() const {
  if (records_.empty()) return std::nullopt;
  auto [lo, hi] = std::minmax_element(records_.begin(), records_.end(),
                                      [](const auto& a, const auto& b) { return a.citing_year < b.citing_year; });
  return YearRange{lo->citing_year, hi->citing_year};
}

namespace {

// Accumulates records and warnings shared by all three parsers.
class CorpusBuilder {
 public:
  void warn(std::size_t line, std::string message) { warnings_.push_back({line, std::move(message)}); }

  std::string clean(std::string_view s, std::size_t line) {
    bool replaced = false;
    std::string out = text::sanitize_utf8(s, replaced);
    if (replaced && line != last_encoding_warning_line_) {
      warn(line, "invalid UTF-8 replaced with U+FFFD");
      last_encoding_warning_line_ = line;
    }
    return out;
  }

  // Validates the year text and id, then keeps or drops the record.
  void finish(PublicationRecord rec, std::optional<std::string_view> year_text, std::size_t line) {
    if (!year_text || text::trim(*year_text).empty()) {
      warn(line, "record " + rec.record_id + " dropped: missing PY");
      return;
    }
    auto year = text::parse_int(*year_text);
    if (!year || *year < kMinYear || *year > kMaxYear) {
      warn(line, fmt::format("record {} dropped: unparseable PY '{}'", rec.record_id, text::trim(*year_text)));
      return;
    }
    rec.citing_year = static_cast<int>(*year);
    if (rec.record_id.empty()) {
      warn(line, "record dropped: empty record id");
      return;
    }
    if (!ids_.insert(rec.record_id).second) {
      warn(line, "record " + rec.record_id + " dropped: duplicate id");
      return;
    }
    std::erase_if(rec.cited_refs_raw, [](const std::string& s) { return s.empty(); });
    records_.push_back(std::move(rec));
  }

  Corpus build(std::string description) {
    return Corpus(std::move(records_), std::move(description), std::move(warnings_));
  }

  std::size_t count() const { return records_.size(); }

 private:
  std::vector<PublicationRecord> records_;
  std::vector<IngestWarning> warnings_;
  std::unordered_set<std::string> ids_;
  std::size_t last_encoding_warning_line_ = 0;
};

std::optional<std::string> non_empty(std::string_view s) {
  s = text::trim(s);
  if (s.empty()) return std::nullopt;
  return std::string(s);
}

std::optional<std::int64_t> parse_count(std::string_view s, CorpusBuilder& b, std::size_t line) {
  if (text::trim(s).empty()) return std::nullopt;
  auto v = text::parse_int(s);
  if (!v || *v < 0) {
    b.warn(line, fmt::format("ignoring invalid TC '{}'", text::trim(s)));
    return std::nullopt;
  }
  return *v;
}

// DT may list several types ("Article; Proceedings Paper"); the first one decides.
DocType doc_type_from_wos(std::string_view s) {
  auto first = text::split(s, ";").front();
  return parse_doc_type(first);
}

std::optional<std::string> first_author_from(std::string_view au) {
  auto first = text::trim(text::split(au, ";").front());
  if (first.empty()) return std::nullopt;
  return text::normalize_name(first);
}

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

void strip_bom(std::string& line) {
  if (line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
}

bool is_tag_line(std::string_view line) {
  if (line.size() < 2) return false;
  auto tag_char = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9'); };
  if (!(line[0] >= 'A' && line[0] <= 'Z') || !tag_char(line[1])) return false;
  return line.size() == 2 || line[2] == ' ';
}

}  // namespace

Corpus parse_wos_plaintext(std::istream& in, std::string source_description) {
  CorpusBuilder builder;
  std::string line;
  std::size_t lineno = 0;
  bool saw_header = false;

  struct Pending {
    PublicationRecord rec;
    std::optional<std::string> year;
    std::size_t start_line = 0;
    std::size_t year_line = 0;
  };
  std::optional<Pending> cur;
  std::string tag;  // tag of the field continuation lines belong to
  std::size_t ordinal = 0;

  // A bad year is reported at its PY line, a missing one at the record start.
  auto close = [&] {
    if (!cur) return;
    if (cur->rec.record_id.empty()) cur->rec.record_id = fmt::format("rec{}", ordinal);
    builder.finish(std::move(cur->rec), cur->year, cur->year ? cur->year_line : cur->start_line);
    cur.reset();
  };

  auto assign = [&](const std::string& field, std::string value, bool continuation) {
    if (!cur) return;
    auto& r = cur->rec;
    if (field == "CR") {
      if (!value.empty()) r.cited_refs_raw.push_back(std::move(value));
    } else if (continuation) {
      // Only the first line of multi-valued fields (AU, SO) matters here,
      // except SO titles that wrap, which are joined.
      if (field == "SO") r.venue += " " + value;
    } else if (field == "SO") {
      r.venue = value;
    } else if (field == "PY") {
      cur->year = value;
      cur->year_line = lineno;
    } else if (field == "DT") {
      r.doc_type = doc_type_from_wos(value);
    } else if (field == "TC") {
      r.times_cited = parse_count(value, builder, lineno);
    } else if (field == "AU") {
      r.first_author = first_author_from(value);
    } else if (field == "UT") {
      r.record_id = value;
    } else if (field == "VL") {
      r.volume = non_empty(value);
    } else if (field == "BP") {
      r.page = non_empty(value);
    } else if (field == "DI") {
      r.doi = non_empty(text::to_lower(value));
    }
  };

  while (std::getline(in, line)) {
    ++lineno;
    strip_cr(line);
    if (lineno == 1) strip_bom(line);
    std::string clean = builder.clean(line, lineno);

    if (clean.rfind("   ", 0) == 0 && (clean.size() == 3 || clean[3] != ' ')) {
      if (cur && !tag.empty()) assign(tag, std::string(text::trim(clean)), true);
      continue;
    }
    if (!is_tag_line(clean)) {
      if (!text::trim(clean).empty()) builder.warn(lineno, "ignoring unrecognized line");
      continue;
    }
    std::string field = clean.substr(0, 2);
    std::string value = clean.size() > 3 ? std::string(text::trim(std::string_view(clean).substr(3))) : "";

    if (field == "FN" || field == "VR") {
      saw_header = saw_header || field == "FN";
      tag.clear();
      continue;
    }
    if (field == "PT") {
      saw_header = true;
      if (cur) {
        builder.warn(lineno, "record without ER terminator closed at next PT");
        close();
      }
      ++ordinal;
      cur = Pending{};
      cur->start_line = lineno;
      tag = field;
      continue;
    }
    if (field == "ER") {
      if (cur) {
        close();
      } else {
        builder.warn(lineno, "ER outside of a record");
      }
      tag.clear();
      continue;
    }
    if (field == "EF") {
      tag.clear();
      continue;
    }
    if (!cur) {
      builder.warn(lineno, "field " + field + " outside of a record");
      tag.clear();
      continue;
    }
    tag = field;
    assign(field, std::move(value), false);
  }
  if (!saw_header) throw MalformedFile(source_description + ": no FN/PT header found");
  if (cur) {
    builder.warn(lineno, "unterminated record at end of file");
    close();
  }
  return builder.build(std::move(source_description));
}

Corpus parse_wos_tabfile(std::istream& in, std::string source_description) {
  CorpusBuilder builder;
  std::string line;
  std::size_t lineno = 0;

  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++lineno;
    strip_cr(line);
    if (lineno == 1) strip_bom(line);
    if (text::trim(line).empty()) continue;
    for (auto cell : text::split(line, "\t")) header.emplace_back(text::trim(cell));
    break;
  }
  if (header.empty()) throw MalformedFile(source_description + ": missing header row");

  auto column = [&](std::string_view tag) -> std::optional<std::size_t> {
    auto it = std::find(header.begin(), header.end(), tag);
    if (it == header.end()) return std::nullopt;
    return static_cast<std::size_t>(it - header.begin());
  };
  auto py = column("PY");
  if (!py) throw MalformedFile(source_description + ": header has no PY column");
  auto so = column("SO"), dt = column("DT"), cr = column("CR"), tc = column("TC"), au = column("AU"),
       ut = column("UT"), vl = column("VL"), bp = column("BP"), di = column("DI");

  std::size_t ordinal = 0;
  while (std::getline(in, line)) {
    ++lineno;
    strip_cr(line);
    if (text::trim(line).empty()) continue;
    ++ordinal;
    std::string clean = builder.clean(line, lineno);
    auto cells = text::split(clean, "\t");
    if (cells.size() < header.size()) {
      builder.warn(lineno, fmt::format("row has {} cells, header has {}", cells.size(), header.size()));
    }
    auto cell = [&](std::optional<std::size_t> idx) -> std::string_view {
      if (!idx || *idx >= cells.size()) return {};
      return text::trim(cells[*idx]);
    };

    PublicationRecord rec;
    rec.record_id = cell(ut).empty() ? fmt::format("rec{}", ordinal) : std::string(cell(ut));
    rec.venue = std::string(cell(so));
    rec.doc_type = doc_type_from_wos(cell(dt));
    if (!cell(cr).empty()) {
      for (auto ref : text::split(cell(cr), "; ")) {
        auto t = text::trim(ref);
        if (!t.empty()) rec.cited_refs_raw.emplace_back(t);
      }
    }
    rec.times_cited = parse_count(cell(tc), builder, lineno);
    rec.first_author = first_author_from(cell(au));
    rec.volume = non_empty(cell(vl));
    rec.page = non_empty(cell(bp));
    if (auto d = non_empty(cell(di))) rec.doi = text::to_lower(*d);
    builder.finish(std::move(rec), cell(py), lineno);
  }
  return builder.build(std::move(source_description));
}

namespace {
constexpr std::string_view kCsvColumns[] = {"record_id", "venue",       "citing_year", "doc_type", "cited_refs",
                                            "first_author", "times_cited", "volume",      "page",     "doi"};
}  // namespace

Corpus parse_test_csv(std::istream& in, std::string source_description) {
  CorpusBuilder builder;
  csv::Reader reader(in);
  auto header_row = reader.next();
  if (!header_row || (header_row->size() == 1 && text::trim((*header_row)[0]).empty())) {
    throw MalformedFile(source_description + ": missing header row");
  }
  std::vector<std::string> header;
  for (std::size_t i = 0; i < header_row->size(); ++i) {
    std::string h = text::to_lower(text::trim((*header_row)[i]));
    if (i == 0 && h.rfind("\xEF\xBB\xBF", 0) == 0) h.erase(0, 3);
    header.push_back(std::move(h));
  }
  auto column = [&](std::string_view name) -> std::optional<std::size_t> {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) return std::nullopt;
    return static_cast<std::size_t>(it - header.begin());
  };
  for (std::string_view required : {"record_id", "venue", "citing_year", "doc_type", "cited_refs"}) {
    if (!column(required)) throw MalformedFile(source_description + ": header lacks column " + std::string(required));
  }
  auto id = column("record_id"), venue = column("venue"), year = column("citing_year"), dt = column("doc_type"),
       refs = column("cited_refs"), fa = column("first_author"), tc = column("times_cited"),
       vl = column("volume"), pg = column("page"), doi = column("doi");

  while (auto row = reader.next()) {
    std::size_t lineno = reader.line();
    if (row->size() == 1 && text::trim((*row)[0]).empty()) continue;
    if (row->size() != header.size()) {
      builder.warn(lineno, fmt::format("row has {} fields, header has {}", row->size(), header.size()));
    }
    std::vector<std::string> cells;
    cells.reserve(row->size());
    for (const auto& c : *row) cells.push_back(builder.clean(c, lineno));
    auto cell = [&](std::optional<std::size_t> idx) -> std::string_view {
      if (!idx || *idx >= cells.size()) return {};
      return text::trim(cells[*idx]);
    };
    PublicationRecord rec;
    rec.record_id = std::string(cell(id));
    rec.venue = std::string(cell(venue));
    rec.doc_type = parse_doc_type(cell(dt));
    if (!cell(refs).empty()) {
      for (auto ref : text::split(cell(refs), "|")) {
        auto t = text::trim(ref);
        if (!t.empty()) rec.cited_refs_raw.emplace_back(t);
      }
    }
    if (auto a = non_empty(cell(fa))) rec.first_author = text::normalize_name(*a);
    rec.times_cited = parse_count(cell(tc), builder, lineno);
    rec.volume = non_empty(cell(vl));
    rec.page = non_empty(cell(pg));
    rec.doi = non_empty(cell(doi));
    builder.finish(std::move(rec), cell(year), lineno);
  }
  return builder.build(std::move(source_description));
}

std::string write_test_csv(const Corpus& corpus) {
  std::string out;
  csv::Row header(std::begin(kCsvColumns), std::end(kCsvColumns));
  out += csv::join(header);
  out += '\n';
  for (const auto& r : corpus.records()) {
    std::string refs;
    for (std::size_t i = 0; i < r.cited_refs_raw.size(); ++i) {
      if (i > 0) refs += '|';
      refs += r.cited_refs_raw[i];
    }
    csv::Row row{r.record_id,
                 r.venue,
                 std::to_string(r.citing_year),
                 std::string(to_string(r.doc_type)),
                 refs,
                 r.first_author.value_or(""),
                 r.times_cited ? std::to_string(*r.times_cited) : "",
                 r.volume.value_or(""),
                 r.page.value_or(""),
                 r.doi.value_or("")};
    out += csv::join(row);
    out += '\n';
  }
  return out;
}

Corpus filter_records(const Corpus& corpus, const std::set<DocType>& doc_types, YearRange years) {
  if (years.lo > years.hi) {
    throw InvalidArgument(fmt::format("year range [{}, {}] is empty", years.lo, years.hi));
  }
  std::vector<PublicationRecord> kept;
  for (const auto& r : corpus.records()) {
    if (doc_types.contains(r.doc_type) && years.contains(r.citing_year)) kept.push_back(r);
  }
  return Corpus(std::move(kept), corpus.source_description(), corpus.ingest_warnings());
}

Corpus merge_corpora(const std::vector<Corpus>& parts) {
  std::vector<PublicationRecord> records;
  std::vector<IngestWarning> warnings;
  std::unordered_set<std::string> ids;
  std::string description;
  for (const auto& part : parts) {
    if (!description.empty()) description += "; ";
    description += part.source_description();
    warnings.insert(warnings.end(), part.ingest_warnings().begin(), part.ingest_warnings().end());
    for (const auto& r : part.records()) {
      if (!ids.insert(r.record_id).second) {
        warnings.push_back({0, fmt::format("{}: duplicate record {} dropped", part.source_description(), r.record_id)});
        continue;
      }
      records.push_back(r);
    }
  }
  return Corpus(std::move(records), std::move(description), std::move(warnings));
}

}  // namespace citespectro
