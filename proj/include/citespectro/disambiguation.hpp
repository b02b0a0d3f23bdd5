#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "citespectro/reference.hpp"

namespace citespectro {

struct SimilarityWeights {
  double author = 0.4;
  double source = 0.3;
  double volume = 0.15;
  double page = 0.15;
};

std::size_t levenshtein(std::string_view a, std::string_view b);

// 1 - levenshtein / max length; two empty strings are identical.
double edit_similarity(std::string_view a, std::string_view b);

// Score in [0, 1]. Zero when both years are present and differ. Otherwise a
// weighted sum of author and source edit similarity plus exact volume and
// page agreement. Absent on both sides counts as agreement, absent on one
// side contributes nothing.
double ref_similarity(const CitedRef& a, const CitedRef& b, const SimilarityWeights& w = {});

// A distinct cited-reference string and how often it occurs.
struct RefVariant {
  CitedRef ref;
  std::size_t count = 0;
};

// Equivalent references merged into one cited work. n_cr counts every member
// occurrence; variants holds each distinct (raw, rpy) once.
struct RefCluster {
  CitedRef canonical;
  std::vector<RefVariant> variants;
  std::size_t n_cr = 0;

  std::size_t exact_variant_count() const { return variants.size(); }
};

struct ClusterOptions {
  // A threshold of 1 or more disables fuzzy matching: exact strings only.
  double threshold = 0.75;
  SimilarityWeights weights;
  unsigned threads = 1;
};

// Single-linkage clustering inside (rpy, first letter of author) blocks.
// References without a year each become their own cluster. Output order is
// by block key, then canonical string; year-less singletons come last.
std::vector<RefCluster> cluster_references(std::span<const CitedRef> refs, const ClusterOptions& options = {});

// Same, over pre-counted distinct references.
std::vector<RefCluster> cluster_variants(std::span<const RefVariant> variants, const ClusterOptions& options = {});

// Clusters every reference in the index.
std::vector<RefCluster> cluster_index(const ReferenceIndex& index, const ClusterOptions& options = {});

// Clusters sorted by n_cr descending, ties by rpy ascending then canonical
// raw; at most n entries.
std::vector<std::pair<CitedRef, std::size_t>> top_cited(std::span<const RefCluster> clusters, std::size_t n);

// "canonical_raw,rpy,n_cr,member_count_exact_variants"
std::string clusters_csv(std::span<const RefCluster> clusters);

}  // namespace citespectro
