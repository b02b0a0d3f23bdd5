#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>

#include "citespectro/disambiguation.hpp"
#include "citespectro/error.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace citespectro;

namespace {

std::vector<CitedRef> parse_all(const std::vector<std::string>& raws, int citing_year = 2016) {
  std::vector<CitedRef> out;
  for (const auto& r : raws) out.push_back(parse_cited_ref(r, citing_year));
  return out;
}

std::size_t total_n_cr(const std::vector<RefCluster>& cs) {
  std::size_t s = 0;
  for (const auto& c : cs) s += c.n_cr;
  return s;
}

// Oracle for a single optional string field.
double field_oracle(const std::optional<std::string>& a, const std::optional<std::string>& b) {
  if (!a && !b) return 1.0;
  if (!a || !b) return 0.0;
  std::size_t longest = std::max(a->size(), b->size());
  if (longest == 0) return 1.0;
  return 1.0 - static_cast<double>(oracle::edit_distance(*a, *b)) / static_cast<double>(longest);
}

double exact_oracle(const std::optional<std::string>& a, const std::optional<std::string>& b) {
  if (!a && !b) return 1.0;
  return (a && b && *a == *b) ? 1.0 : 0.0;
}

double score_oracle(const CitedRef& a, const CitedRef& b) {
  if (a.rpy && b.rpy && *a.rpy != *b.rpy) return 0.0;
  return 0.4 * field_oracle(std::optional(a.first_author), std::optional(b.first_author)) + 0.3 * field_oracle(a.source, b.source) +
         0.15 * exact_oracle(a.volume, b.volume) + 0.15 * exact_oracle(a.page, b.page);
}

std::vector<std::string> random_refs(std::mt19937& rng, std::size_t n) {
  static const char* authors[] = {"smith a", "smith ab", "smyth a", "jones b", "jonas b", "garfield e", "garfield e."};
  static const char* sources[] = {"j am soc inf sci", "j am soc inform sci", "scientometrics", "scientometric",
                                  "science", "nature"};
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) {
    std::string s = std::string(authors[rng() % 7]) + ", " + std::to_string(1990 + rng() % 4) + ", " +
                    sources[rng() % 6];
    if (rng() % 2) s += ", v" + std::to_string(1 + rng() % 3);
    if (rng() % 2) s += ", p" + std::to_string(10 + rng() % 3);
    out.push_back(s);
  }
  return out;
}

}  // namespace

TEST_SUITE("disambiguation") {
  TEST_CASE("levenshtein matches the full-matrix oracle") {
    std::mt19937 rng(3);
    for (int i = 0; i < 500; ++i) {
      std::string a, b;
      for (std::size_t j = rng() % 12; j > 0; --j) a.push_back("abcd"[rng() % 4]);
      for (std::size_t j = rng() % 12; j > 0; --j) b.push_back("abcd"[rng() % 4]);
      CHECK(levenshtein(a, b) == oracle::edit_distance(a, b));
    }
    CHECK(edit_similarity("", "") == 1.0);
  }

  TEST_CASE("identical refs score 1, differing years score 0") {
    auto a = parse_cited_ref("maniatis t, 1982, mol cloning", 2016);
    CHECK(ref_similarity(a, a) == doctest::Approx(1.0));
    auto b = parse_cited_ref("maniatis t, 1989, mol cloning", 2016);
    CHECK(ref_similarity(a, b) == 0.0);
  }

  TEST_CASE("maniatis variants clear the default threshold") {
    auto a = parse_cited_ref("maniatis t, 1982, mol cloning", 2016);
    auto b = parse_cited_ref("maniatis t, 1982, mol cloning laborato", 2016);
    double expected = score_oracle(a, b);
    CHECK(ref_similarity(a, b) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(expected >= 0.75);
  }

  TEST_CASE("property: similarity agrees with the oracle and is symmetric") {
    std::mt19937 rng(19);
    auto refs = parse_all(random_refs(rng, 80));
    for (const auto& a : refs)
      for (const auto& b : refs) {
        double s = ref_similarity(a, b);
        CHECK(s == ref_similarity(b, a));
        CHECK(s == doctest::Approx(score_oracle(a, b)).epsilon(1e-12));
        CHECK(s >= 0.0);
        CHECK(s <= 1.0 + 1e-12);
      }
  }

  TEST_CASE("byte-identical strings form one cluster") {
    auto refs = parse_all({"price djd, 1965, science, v149, p510", "price djd, 1965, science, v149, p510"});
    auto cs = cluster_references(refs);
    REQUIRE(cs.size() == 1);
    CHECK(cs[0].n_cr == 2);
    CHECK(cs[0].exact_variant_count() == 1);
  }

  TEST_CASE("threshold 1 groups exact strings only") {
    std::mt19937 rng(23);
    auto raws = random_refs(rng, 300);
    std::map<std::string, std::size_t> groups;
    for (const auto& r : raws) ++groups[r];
    auto refs = parse_all(raws);
    for (double t : {1.0, 1.0 + 1e-9, 2.0}) {
      auto cs = cluster_references(refs, {.threshold = t});
      CHECK(cs.size() == groups.size());
      for (const auto& c : cs) {
        REQUIRE(c.exact_variant_count() == 1);
        CHECK(c.n_cr == groups.at(c.canonical.raw));
      }
    }
  }

  TEST_CASE("planted Hirsch variants merge 306 to 308") {
    auto refs = parse_all(fixtures::planted_variant_refs());
    auto exact = cluster_references(refs, {.threshold = 2.0});
    auto merged = cluster_references(refs);
    auto find = [](const std::vector<RefCluster>& cs) {
      return std::find_if(cs.begin(), cs.end(), [](const RefCluster& c) { return c.canonical.raw == fixtures::kHirsch; });
    };
    REQUIRE(find(exact) != exact.end());
    CHECK(find(exact)->n_cr == 306);
    REQUIRE(find(merged) != merged.end());
    CHECK(find(merged)->n_cr == 308);
    CHECK(find(merged)->exact_variant_count() == 3);
    CHECK(total_n_cr(merged) == refs.size());
  }

  TEST_CASE("property: partition and monotonicity") {
    std::mt19937 rng(29);
    for (int trial = 0; trial < 20; ++trial) {
      auto refs = parse_all(random_refs(rng, 150));
      refs.push_back(parse_cited_ref("no year here", 2016));
      refs.push_back(parse_cited_ref("no year here", 2016));
      std::size_t prev = 0;
      for (double t : {1.0, 0.9, 0.75, 0.5, 0.2}) {
        auto cs = cluster_references(refs, {.threshold = t});
        CHECK(total_n_cr(cs) == refs.size());
        if (prev) CHECK(cs.size() <= prev);
        prev = cs.size();
        for (const auto& c : cs) {
          CHECK(c.n_cr >= 1);
          bool canonical_is_member = false;
          for (const auto& v : c.variants) {
            if (v.ref.rpy && c.canonical.rpy) CHECK(*v.ref.rpy == *c.canonical.rpy);
            if (v.ref == c.canonical) canonical_is_member = true;
          }
          CHECK(canonical_is_member);
        }
      }
    }
  }

  TEST_CASE("yearless refs stay singletons") {
    auto refs = parse_all({"anonymous editorial", "anonymous editorial", "anonymous editorial"});
    auto cs = cluster_references(refs, {.threshold = 0.1});
    CHECK(cs.size() == 3);
  }

  TEST_CASE("canonical is most frequent, then shortest") {
    auto refs = parse_all({"garfield e, 1979, citation indexing", "garfield e, 1979, citation indexing its",
                           "garfield e, 1979, citation indexing its", "garfield e., 1979, citation indexing"});
    auto cs = cluster_references(refs);
    REQUIRE(cs.size() == 1);
    CHECK(cs[0].canonical.raw == "garfield e, 1979, citation indexing its");
    auto tie = cluster_references(parse_all({"garfield e, 1979, citation indexing its", "garfield e, 1979, citation indexing"}));
    REQUIRE(tie.size() == 1);
    CHECK(tie[0].canonical.raw == "garfield e, 1979, citation indexing");
  }

  TEST_CASE("threaded clustering equals serial") {
    std::mt19937 rng(31);
    auto refs = parse_all(random_refs(rng, 2000));
    auto serial = clusters_csv(cluster_references(refs));
    CHECK(clusters_csv(cluster_references(refs, {.threads = 4})) == serial);
  }

  TEST_CASE("top_cited ordering, ties and truncation") {
    std::vector<std::string> raws;
    for (const auto& [s, n] : fixtures::gene_top10())
      for (int i = 0; i < n; ++i) raws.push_back(s);
    auto cs = cluster_references(parse_all(raws), {.threshold = 2.0});
    auto top = top_cited(cs, 3);
    REQUIRE(top.size() == 3);
    CHECK(top[0].first.first_author == "sanger f");
    CHECK(top[0].second == 1718);
    CHECK(top[1].second == 1272);
    auto all = top_cited(cs, 1000);
    CHECK(all.size() == cs.size());
    auto southern = std::find_if(all.begin(), all.end(), [](const auto& p) { return p.first.first_author == "southern em"; });
    auto maniatis = std::find_if(all.begin(), all.end(),
                                 [](const auto& p) { return p.first.first_author == "maniatis t" && p.second == 609; });
    REQUIRE(southern != all.end());
    REQUIRE(maniatis != all.end());
    CHECK(southern->second == 609);
    CHECK(southern < maniatis);
  }

  TEST_CASE("clusters csv schema") {
    auto cs = cluster_references(parse_all({"a b, 2000, j x, v1, p2", "a b, 2000, j x, v1, p2"}));
    CHECK(clusters_csv(cs) == "canonical_raw,rpy,n_cr,member_count_exact_variants\n\"a b, 2000, j x, v1, p2\",2000,2,1\n");
  }
}
