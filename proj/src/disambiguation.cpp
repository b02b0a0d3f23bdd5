#include "citespectro/disambiguation.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <thread>
#include <tuple>
#include <unordered_map>

#include <fmt/format.h>

#include "citespectro/csv.hpp"
#include "citespectro/error.hpp"

namespace citespectro {

std::size_t levenshtein(std::string_view a, std::string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<std::size_t> row(b.size() + 1);
  std::iota(row.begin(), row.end(), std::size_t{0});
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t up = row[j];
      std::size_t cost = a[i - 1] == b[j - 1] ? 0 : 1;
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + cost});
      diag = up;
    }
  }
  return row[b.size()];
}

double edit_similarity(std::string_view a, std::string_view b) {
  std::size_t longest = std::max(a.size(), b.size());
  if (longest == 0) return 1.0;
  return 1.0 - static_cast<double>(levenshtein(a, b)) / static_cast<double>(longest);
}

namespace {

double optional_text_score(const std::optional<std::string>& a, const std::optional<std::string>& b) {
  if (!a && !b) return 1.0;
  if (!a || !b) return 0.0;
  return edit_similarity(*a, *b);
}

double optional_exact_score(const std::optional<std::string>& a, const std::optional<std::string>& b) {
  if (!a && !b) return 1.0;
  if (!a || !b) return 0.0;
  return *a == *b ? 1.0 : 0.0;
}

// Upper bound on edit similarity from lengths alone.
double length_bound(std::size_t la, std::size_t lb) {
  std::size_t longest = std::max(la, lb);
  if (longest == 0) return 1.0;
  std::size_t diff = la > lb ? la - lb : lb - la;
  return 1.0 - static_cast<double>(diff) / static_cast<double>(longest);
}

double optional_length_bound(const std::optional<std::string>& a, const std::optional<std::string>& b) {
  if (!a && !b) return 1.0;
  if (!a || !b) return 0.0;
  return length_bound(a->size(), b->size());
}

}  // namespace

double ref_similarity(const CitedRef& a, const CitedRef& b, const SimilarityWeights& w) {
  if (a.rpy && b.rpy && *a.rpy != *b.rpy) return 0.0;
  double score = w.author * edit_similarity(a.first_author, b.first_author) +
                 w.source * optional_text_score(a.source, b.source) +
                 w.volume * optional_exact_score(a.volume, b.volume) +
                 w.page * optional_exact_score(a.page, b.page);
  return std::clamp(score, 0.0, 1.0);
}

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent_[b] = a;
  }

 private:
  std::vector<std::size_t> parent_;
};

// Most frequent raw string, ties to the shortest, then lexicographic.
bool better_canonical(const RefVariant& a, const RefVariant& b) {
  if (a.count != b.count) return a.count > b.count;
  if (a.ref.raw.size() != b.ref.raw.size()) return a.ref.raw.size() < b.ref.raw.size();
  return a.ref.raw < b.ref.raw;
}

RefCluster make_cluster(std::vector<RefVariant> variants) {
  std::sort(variants.begin(), variants.end(), better_canonical);
  RefCluster c;
  c.canonical = variants.front().ref;
  for (const auto& v : variants) c.n_cr += v.count;
  c.variants = std::move(variants);
  return c;
}

std::vector<RefCluster> cluster_block(std::span<const RefVariant* const> block, const ClusterOptions& opt) {
  const std::size_t n = block.size();
  DisjointSets sets(n);
  if (opt.threshold < 1.0) {
    const auto& w = opt.weights;
    for (std::size_t i = 0; i < n; ++i) {
      const CitedRef& a = block[i]->ref;
      for (std::size_t j = i + 1; j < n; ++j) {
        if (sets.find(i) == sets.find(j)) continue;
        const CitedRef& b = block[j]->ref;
        double exact = w.volume * optional_exact_score(a.volume, b.volume) + w.page * optional_exact_score(a.page, b.page);
        double bound = exact + w.author * length_bound(a.first_author.size(), b.first_author.size()) +
                       w.source * optional_length_bound(a.source, b.source);
        if (bound < opt.threshold) continue;
        if (ref_similarity(a, b, w) >= opt.threshold) sets.unite(i, j);
      }
    }
  }
  std::map<std::size_t, std::vector<RefVariant>> groups;
  for (std::size_t i = 0; i < n; ++i) groups[sets.find(i)].push_back(*block[i]);
  std::vector<RefCluster> out;
  out.reserve(groups.size());
  for (auto& [root, members] : groups) out.push_back(make_cluster(std::move(members)));
  std::sort(out.begin(), out.end(),
            [](const RefCluster& a, const RefCluster& b) { return a.canonical.raw < b.canonical.raw; });
  return out;
}

}  // namespace

std::vector<RefCluster> cluster_variants(std::span<const RefVariant> variants, const ClusterOptions& options) {
  if (!(options.threshold > 0.0)) {
    throw InvalidArgument(fmt::format("cluster threshold {} must be positive", options.threshold));
  }

  // Merge duplicate (raw, rpy) entries first; identical strings always join.
  std::map<std::pair<std::string_view, int>, RefVariant> distinct;
  std::vector<RefCluster> yearless;
  for (const auto& v : variants) {
    if (v.count == 0) continue;
    if (!v.ref.rpy) {
      for (std::size_t k = 0; k < v.count; ++k) {
        RefCluster c;
        c.canonical = v.ref;
        c.variants = {RefVariant{v.ref, 1}};
        c.n_cr = 1;
        yearless.push_back(std::move(c));
      }
      continue;
    }
    auto [it, inserted] = distinct.try_emplace({std::string_view(v.ref.raw), *v.ref.rpy}, v);
    if (!inserted) it->second.count += v.count;
  }

  using BlockKey = std::pair<int, char>;
  std::map<BlockKey, std::vector<const RefVariant*>> blocks;
  for (const auto& [key, v] : distinct) {
    char initial = v.ref.first_author.empty() ? '\0' : v.ref.first_author.front();
    blocks[{*v.ref.rpy, initial}].push_back(&v);
  }

  std::vector<const std::vector<const RefVariant*>*> block_list;
  block_list.reserve(blocks.size());
  for (const auto& [key, members] : blocks) block_list.push_back(&members);

  std::vector<std::vector<RefCluster>> results(block_list.size());
  unsigned threads = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(block_list.size())));
  if (threads <= 1) {
    for (std::size_t b = 0; b < block_list.size(); ++b) results[b] = cluster_block(*block_list[b], options);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        for (std::size_t b = t; b < block_list.size(); b += threads) results[b] = cluster_block(*block_list[b], options);
      });
    }
    for (auto& th : pool) th.join();
  }

  std::vector<RefCluster> out;
  for (auto& r : results) {
    for (auto& c : r) out.push_back(std::move(c));
  }
  for (auto& c : yearless) out.push_back(std::move(c));
  return out;
}

std::vector<RefCluster> cluster_references(std::span<const CitedRef> refs, const ClusterOptions& options) {
  std::vector<RefVariant> variants;
  variants.reserve(refs.size());
  for (const auto& r : refs) variants.push_back({r, 1});
  return cluster_variants(variants, options);
}

std::vector<RefCluster> cluster_index(const ReferenceIndex& index, const ClusterOptions& options) {
  std::vector<RefVariant> variants;
  variants.reserve(index.unique_refs().size());
  for (std::size_t i = 0; i < index.unique_refs().size(); ++i) {
    variants.push_back({index.unique_refs()[i], index.occurrences()[i]});
  }
  return cluster_variants(variants, options);
}

std::vector<std::pair<CitedRef, std::size_t>> top_cited(std::span<const RefCluster> clusters, std::size_t n) {
  std::vector<const RefCluster*> order;
  order.reserve(clusters.size());
  for (const auto& c : clusters) order.push_back(&c);
  auto key = [](const RefCluster* c) {
    return std::make_tuple(-static_cast<long long>(c->n_cr), c->canonical.rpy.value_or(kMaxYear + 1),
                           std::string_view(c->canonical.raw));
  };
  std::size_t take = std::min(n, order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(take), order.end(),
                    [&](const RefCluster* a, const RefCluster* b) { return key(a) < key(b); });
  std::vector<std::pair<CitedRef, std::size_t>> out;
  out.reserve(take);
  for (std::size_t i = 0; i < take; ++i) out.emplace_back(order[i]->canonical, order[i]->n_cr);
  return out;
}

std::string clusters_csv(std::span<const RefCluster> clusters) {
  std::string out = "canonical_raw,rpy,n_cr,member_count_exact_variants\n";
  for (const auto& c : clusters) {
    out += csv::join({c.canonical.raw, c.canonical.rpy ? std::to_string(*c.canonical.rpy) : "",
                      std::to_string(c.n_cr), std::to_string(c.exact_variant_count())});
    out += '\n';
  }
  return out;
}

}  // namespace citespectro
