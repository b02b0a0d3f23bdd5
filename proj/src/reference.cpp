#include "citespectro/reference.hpp"

#include <unordered_map>

#include "citespectro/text.hpp"

namespace citespectro {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

bool is_alnum(char c) { return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

// "v102" -> "102"
std::optional<std::string> volume_of(std::string_view seg) {
  if (seg.size() < 2 || (seg[0] != 'v' && seg[0] != 'V')) return std::nullopt;
  if (!all_digits(seg.substr(1))) return std::nullopt;
  return std::string(seg.substr(1));
}

// "p16569" -> "16569"; also "pe1234" style article numbers
std::optional<std::string> page_of(std::string_view seg) {
  if (seg.size() < 2 || (seg[0] != 'p' && seg[0] != 'P')) return std::nullopt;
  auto rest = seg.substr(1);
  for (char c : rest) {
    if (!is_alnum(c)) return std::nullopt;
  }
  // must contain a digit, otherwise it is a word such as "pp" or "psych"
  for (char c : rest) {
    if (c >= '0' && c <= '9') return std::string(rest);
  }
  return std::nullopt;
}

std::optional<std::string> doi_of(std::string_view seg) {
  if (seg.size() < 5) return std::nullopt;
  if (text::to_lower(seg.substr(0, 4)) != "doi ") return std::nullopt;
  auto rest = text::trim(seg.substr(4));
  if (rest.empty()) return std::nullopt;
  return std::string(rest);
}

bool is_locator(std::string_view seg) { return volume_of(seg) || page_of(seg) || doi_of(seg); }

}  // namespace

CitedRef parse_cited_ref(std::string_view raw, int citing_year) {
  CitedRef ref;
  ref.raw = std::string(raw);

  std::vector<std::string_view> segments;
  for (auto s : text::split(raw, ", ")) segments.push_back(text::trim(s));
  if (segments.empty()) return ref;

  ref.first_author = text::normalize_name(segments[0]);

  std::size_t year_at = 0;
  for (std::size_t i = 1; i < segments.size() && i < 3; ++i) {
    const auto seg = segments[i];
    if (seg.size() == 4 && all_digits(seg)) {
      int y = (seg[0] - '0') * 1000 + (seg[1] - '0') * 100 + (seg[2] - '0') * 10 + (seg[3] - '0');
      if (y >= kMinYear && y <= citing_year + 1 && y <= kMaxYear) {
        ref.rpy = y;
        year_at = i;
        break;
      }
    }
  }

  std::size_t source_at = ref.rpy ? year_at + 1 : 1;
  if (source_at < segments.size() && !segments[source_at].empty() && !is_locator(segments[source_at])) {
    ref.source = text::normalize_title(segments[source_at]);
  }

  for (std::size_t i = 1; i < segments.size(); ++i) {
    const auto seg = segments[i];
    if (!ref.volume) {
      if (auto v = volume_of(seg)) {
        ref.volume = std::move(v);
        continue;
      }
    }
    if (!ref.page) {
      if (auto p = page_of(seg)) {
        ref.page = std::move(p);
        continue;
      }
    }
    if (!ref.doi) {
      if (auto d = doi_of(seg)) ref.doi = std::move(d);
    }
  }
  return ref;
}

std::vector<ExtractedRef> extract_all_refs(const Corpus& corpus) {
  std::vector<ExtractedRef> out;
  out.reserve(corpus.total_raw_refs());
  for (const auto& r : corpus.records()) {
    for (const auto& raw : r.cited_refs_raw) {
      out.push_back({r.record_id, r.citing_year, parse_cited_ref(raw, r.citing_year)});
    }
  }
  return out;
}

ReferenceIndex::ReferenceIndex(const Corpus& corpus) : corpus_(&corpus) {
  // A parse made with the widest year window is valid for any citing year
  // whose window still admits the year it found: every token left of the
  // winner was outside [1500, 2100] and so is outside any narrower window.
  struct Entry {
    RefId wide;
    bool has_year;
    int year;
  };
  std::unordered_map<std::string_view, Entry> by_raw;
  std::unordered_map<std::string, RefId> narrow;  // keyed by raw + '\0' + citing year

  auto add = [&](CitedRef ref) {
    auto id = static_cast<RefId>(unique_.size());
    unique_.push_back(std::move(ref));
    occurrences_.push_back(0);
    return id;
  };

  per_record_.reserve(corpus.size());
  for (const auto& rec : corpus.records()) {
    std::vector<RefId> ids;
    ids.reserve(rec.cited_refs_raw.size());
    for (const auto& raw : rec.cited_refs_raw) {
      auto it = by_raw.find(raw);
      if (it == by_raw.end()) {
        CitedRef wide = parse_cited_ref(raw, kMaxYear);
        Entry e{0, wide.rpy.has_value(), wide.rpy.value_or(0)};
        e.wide = add(std::move(wide));
        it = by_raw.emplace(std::string_view(raw), e).first;
      }
      RefId id = it->second.wide;
      if (it->second.has_year && it->second.year > rec.citing_year + 1) {
        std::string key = raw;
        key.push_back('\0');
        key += std::to_string(rec.citing_year);
        auto n = narrow.find(key);
        if (n == narrow.end()) n = narrow.emplace(std::move(key), add(parse_cited_ref(raw, rec.citing_year))).first;
        id = n->second;
      }
      ++occurrences_[id];
      ids.push_back(id);
    }
    total_ += ids.size();
    per_record_.push_back(std::move(ids));
  }
}

}  // namespace citespectro
