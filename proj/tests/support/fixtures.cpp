#include "fixtures.hpp"

#include <fstream>
#include <random>

#include <fmt/format.h>

#include "citespectro/csv.hpp"

namespace fixtures {

using citespectro::Trajectory;

PublicationRecord record(std::string id, std::string venue, int year, std::vector<std::string> refs,
                         std::string first_author) {
  PublicationRecord r;
  r.record_id = std::move(id);
  r.venue = std::move(venue);
  r.citing_year = year;
  r.doc_type = citespectro::DocType::Article;
  r.cited_refs_raw = std::move(refs);
  if (!first_author.empty()) r.first_author = std::move(first_author);
  return r;
}

std::string synthetic_ref(int rpy, int serial) {
  static const char* const kSurnames[] = {"adams", "baker", "clark", "davis", "evans", "fisher", "garcia", "harris",
                                          "irwin", "jones", "king",  "lewis", "moore", "nolan", "owens", "parker"};
  const char* surname = kSurnames[static_cast<unsigned>(serial) % 16];
  return fmt::format("{}{} {}, {}, j synth res {}, v{}, p{}", surname, serial, static_cast<char>('a' + serial % 26),
                     rpy, serial % 97, 1 + serial % 60, 100 + serial);
}

Corpus corpus_from_counts(const std::map<int, std::map<int, int>>& counts) {
  std::vector<PublicationRecord> records;
  int serial = 0;
  for (const auto& [year, by_rpy] : counts) {
    std::vector<std::string> refs;
    for (const auto& [rpy, n] : by_rpy) {
      for (int k = 0; k < n; ++k) refs.push_back(synthetic_ref(rpy, serial++));
    }
    records.push_back(record(fmt::format("Y{}", year), "SCIENTOMETRICS", year, std::move(refs)));
  }
  return Corpus(std::move(records), "counts fixture");
}

Corpus lotka_spike() { return corpus_from_counts({{1978, {{1924, 2}, {1925, 2}, {1926, 9}, {1927, 2}, {1928, 2}}}}); }

Corpus research_front() {
  std::map<int, std::map<int, int>> counts;
  for (int y = 1986; y <= 2015; ++y) {
    auto& row = counts[y];
    row[y - 1] = 25;
    row[y - 2] = 3;
    row[y - 3] = 2;
    row[y - 12] += 1;
    row[y - 25] += 1;
    row[y - 45] += 1;
    row[1926] += 1;
  }
  return corpus_from_counts(counts);
}

Corpus classic_spike() {
  std::mt19937 rng(1926);
  std::uniform_int_distribution<int> background(0, 2);
  std::map<int, std::map<int, int>> counts;
  for (int y = 1986; y <= 2015; ++y) {
    auto& row = counts[y];
    for (int rpy = kWideRange.lo; rpy <= y; ++rpy) {
      int n = background(rng);
      if (n > 0) row[rpy] = n;
    }
    row[1926] = 12;
  }
  return corpus_from_counts(counts);
}

std::vector<std::string> planted_variant_refs() {
  std::vector<std::string> refs(306, kHirsch);
  refs.push_back("hirsch je, 2005, p natl acad sci us, v102, p16569");
  refs.push_back("hirsch je, 2005, p natl acad sci, v102, p16569");
  // same author and year, a different work
  for (int i = 0; i < 4; ++i) refs.push_back("hirsch je, 2005, arxiv physics 0508025");
  auto add = [&](const std::string& s, int n) { refs.insert(refs.end(), static_cast<std::size_t>(n), s); };
  add("de solla price d. j., 1963, little sci big sci", 171);
  add("lotka a. j., 1926, j washington acad sc, v16, p317", 135);
  add("small h, 1973, j am soc inform sci, v24, p265", 130);
  add("katz js, 1997, res policy, v26, p1", 125);
  add("garfield e, 1972, science, v178, p471", 113);
  add("egghe l, 2006, scientometrics, v69, p131", 108);
  add("price djd, 1965, science, v149, p510", 108);
  add("schubert a, 1986, scientometrics, v9, p281", 106);
  add("merton rk, 1968, science, v159, p56", 105);
  return refs;
}

Corpus planted_variant_corpus() {
  auto refs = planted_variant_refs();
  std::vector<PublicationRecord> records;
  // 20 references per record, citing years 2006-2015
  for (std::size_t i = 0; i < refs.size(); i += 20) {
    std::vector<std::string> chunk(refs.begin() + static_cast<std::ptrdiff_t>(i),
                                   refs.begin() + static_cast<std::ptrdiff_t>(std::min(refs.size(), i + 20)));
    records.push_back(record(fmt::format("S{}", i / 20), "SCIENTOMETRICS", 2006 + static_cast<int>(i / 20) % 10,
                             std::move(chunk)));
  }
  return Corpus(std::move(records), "planted variants");
}

std::vector<std::pair<std::string, int>> gene_top10() {
  return {{"sanger f, 1977, p natl acad sci usa, v74, p5463", 1718},
          {"sambrook j., 1989, mol cloning lab manu", 1272},
          {"laemmli uk, 1970, nature, v227, p680", 818},
          {"maniatis t., 1982, mol cloning", 761},
          {"thompson jd, 1994, nucleic acids res, v22, p4673", 616},
          {"maniatis t, 1982, mol cloning laborato", 609},
          {"southern em, 1975, j mol biol, v98, p503", 609},
          {"yanischperron c, 1985, gene, v33, p103", 544},
          {"altschul sf, 1990, j mol biol, v215, p403", 504},
          {"maxam a m, 1980, methods enzymol, v65, p499", 503}};
}

Corpus soziale_welt_metrics() {
  std::vector<std::string> refs;
  int serial = 0;
  auto sw = [&](int rpy) {
    int s = serial++;
    return fmt::format("author{} x, {}, soz welt, v{}, p{}", s, rpy, rpy - 1949, 10 + s);
  };
  for (int i = 0; i < 9; ++i) refs.push_back(sw(2013));
  for (int i = 0; i < 3; ++i) refs.push_back(sw(2012));
  for (int i = 0; i < 23; ++i) refs.push_back(sw(2011 - i % 8));  // ages 3..10
  for (int i = 0; i < 63; ++i) refs.push_back(sw(2003 - i % 40));  // ages 11..50
  std::vector<PublicationRecord> records;
  for (std::size_t i = 0; i < refs.size(); i += 7) {
    std::vector<std::string> chunk(refs.begin() + static_cast<std::ptrdiff_t>(i),
                                   refs.begin() + static_cast<std::ptrdiff_t>(std::min(refs.size(), i + 7)));
    chunk.push_back(fmt::format("weber m, 1922, wirtschaft gesellschaft"));
    records.push_back(record(fmt::format("C{}", i), i % 2 ? "KOLNER Z SOZIOL SOZ" : "AM J SOCIOL", 2014, chunk));
  }
  // Soziale Welt's own 2014 papers (citing side), plus a 2013 paper
  for (int p = 0; p < 4; ++p) {
    records.push_back(record(fmt::format("SW{}", p), kSozWeltFull, 2014,
                             {"luhmann n, 1984, soziale systeme", "beck u., 1986, risikogesellschaft w",
                              fmt::format("bourdieu p., {}, feinen unterschiede", 1982 + p)}));
  }
  records.push_back(record("SW-2013", kSozWeltFull, 2013, {"luhmann n, 1997, gesellschaft gesells"}));
  // 2013 citations do not count toward 2014
  records.push_back(record("C-2013", "AM J SOCIOL", 2013, {sw(2012), sw(1990)}));
  return Corpus(std::move(records), "soziale welt fixture");
}

Corpus immediacy_fixture() {
  std::vector<PublicationRecord> records;
  for (int p = 0; p < 8; ++p) {
    auto r = record(fmt::format("P{}", p), "J TEST VENUE", 2010, {"smith a, 2001, nature, v1, p1"},
                    fmt::format("writer{} q", p));
    r.volume = "12";
    r.page = std::to_string(100 + 10 * p);
    records.push_back(std::move(r));
  }
  // same-year citations of papers 0, 3 and 5 (paper 3 twice)
  records.push_back(record("C1", "OTHER J", 2010,
                           {"writer0 q, 2010, j test venue, v12, p100", "writer3 q, 2010, j test venue, v12, p130"}));
  records.push_back(record("C2", "OTHER J", 2010,
                           {"writer3 q, 2010, j test venue, v12, p130", "writer5 q, 2010, j test venue, v12, p150"}));
  // a 2011 citation of paper 1 is not same-year
  records.push_back(record("C3", "OTHER J", 2011, {"writer1 q, 2010, j test venue, v12, p110"}));
  // wrong page: matches no paper
  records.push_back(record("C4", "OTHER J", 2010, {"writer6 q, 2010, j test venue, v12, p999"}));
  return Corpus(std::move(records), "immediacy fixture");
}

Corpus merton_corpus() {
  std::vector<PublicationRecord> records;
  records.reserve(5677);
  // 22 frequent citers over 85 documents
  const int frequent[22] = {7, 6, 5, 5, 4, 4, 4, 4, 4, 4, 4, 4, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3};
  std::vector<std::string> citing_authors;
  for (int a = 0; a < 22; ++a) {
    for (int k = 0; k < frequent[a]; ++k) citing_authors.push_back(fmt::format("frequent{:02d} a", a));
  }
  // 153 occasional citers with two documents each
  for (int a = 0; a < 153; ++a) {
    citing_authors.push_back(fmt::format("occasional{:03d} b", a));
    citing_authors.push_back(fmt::format("occasional{:03d} b", a));
  }
  const std::string merton_variants[] = {"merton rk, 1968, science, v159, p56", "merton r.k., 1973, sociology sci",
                                         "merton r. k., 1957, am sociol rev, v22, p635", "Merton RK, 1988, isis, v79, p606"};
  int merton_refs = 0;
  for (int d = 0; d < 5677; ++d) {
    const bool sss = d % 3 == 2 && d < 1786 * 3;
    std::string venue = sss ? "SOCIAL STUDIES OF SCIENCE" : "SCIENTOMETRICS";
    int year = sss ? 1971 + d % 44 : 1978 + d % 37;
    std::vector<std::string> refs{fmt::format("garfield e, {}, current contents", 1960 + d % 50),
                                  fmt::format("mertonson z, {}, unrelated work", 1950 + d % 60)};
    std::string author = fmt::format("writer{:04d} c", d);
    if (d < 391) {
      refs.push_back(merton_variants[d % 4]);
      ++merton_refs;
      if (d < 204) {
        refs.push_back(merton_variants[(d + 1) % 4]);
        ++merton_refs;
      }
      author = citing_authors[static_cast<std::size_t>(d)];
    }
    records.push_back(record(fmt::format("M{:05d}", d), venue, year, std::move(refs), author));
  }
  return Corpus(std::move(records), "merton fixture");
}

namespace {
Trajectory shape(std::string target, int pub, const std::vector<long long>& counts) {
  Trajectory t;
  t.target = std::move(target);
  t.publication_year = pub;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    t.yearly_counts[pub + static_cast<int>(i)] = counts[i];
    t.total += counts[i];
  }
  return t;
}
}  // namespace

Trajectory kamihara_shape() {
  return shape("kamihara y, 2008, j am chem soc, v130, p3296", 2008, {353, 750, 763, 700, 610, 546, 500, 425});
}

Trajectory latour_shape() {
  return shape("latour b, 1996, soz welt, v47, p369", 1996,
               {0, 0, 1, 0, 0, 1, 0, 0, 1, 3, 5, 8, 10, 12, 15, 14, 18, 20, 22, 25});
}

Trajectory coleman_shape() {
  std::vector<long long> counts;
  for (int y = 1988; y <= 2007; ++y) counts.push_back(5 + (y - 1988) * 56 / 19);  // 5 ... 61
  for (long long c : {231, 244, 252, 265, 271, 280, 291, 300}) counts.push_back(c);
  return shape("coleman js, 1988, am j sociol, v94, ps95", 1988, counts);
}

std::vector<Trajectory> noise_shapes() {
  const long long pattern[] = {2, 1, 3, 2, 4, 1, 2, 3, 1, 2, 4, 2, 1, 3, 2, 1, 2, 3, 1, 2};
  std::vector<Trajectory> out;
  for (int w = 0; w < 9; ++w) {
    int pub = 1999 + w % 3;
    std::vector<long long> counts;
    for (int y = pub; y <= 2015; ++y) counts.push_back(pattern[(y - pub + w) % 20]);
    out.push_back(shape(fmt::format("autor{} k, {}, soz welt, v{}, p{}", w, pub, 40 + w, 11 + w), pub, counts));
  }
  return out;
}

Corpus corpus_from_trajectories(const std::vector<Trajectory>& ts, const std::string& venue) {
  std::vector<PublicationRecord> records;
  int serial = 0;
  for (const auto& t : ts) {
    for (const auto& [year, count] : t.yearly_counts) {
      for (long long k = 0; k < count; ++k) {
        records.push_back(record(fmt::format("T{}", serial++), venue, year, {t.target}));
      }
    }
  }
  return Corpus(std::move(records), "trajectory fixture");
}

void write_large_corpus(const std::filesystem::path& path, std::size_t n_records, unsigned seed) {
  std::mt19937_64 rng(seed);
  struct Work {
    int year;
    std::vector<std::string> spellings;
  };
  std::vector<Work> works;
  const int kWorks = 6000;
  std::uniform_int_distribution<int> year_dist(1900, 2015);
  for (int w = 0; w < kWorks; ++w) {
    int year = w < 4000 ? 1960 + static_cast<int>(rng() % 56) : year_dist(rng);
    Work work{year, {}};
    std::string author = fmt::format("{}{} {}", static_cast<char>('a' + w % 26), w, static_cast<char>('a' + w % 7));
    std::string source = fmt::format("j large corp {}", w % 300);
    work.spellings.push_back(fmt::format("{}, {}, {}, v{}, p{}", author, year, source, 1 + w % 80, 1 + w % 900));
    if (w % 5 == 0) {
      work.spellings.push_back(fmt::format("{}., {}, {}, v{}, p{}", author, year, source, 1 + w % 80, 1 + w % 900));
    }
    if (w % 11 == 0) {
      work.spellings.push_back(fmt::format("{}, {}, {} x, v{}, p{}", author, year, source, 1 + w % 80, 1 + w % 900));
    }
    works.push_back(std::move(work));
  }
  // popularity skewed toward low indices
  std::vector<double> weights(kWorks);
  for (int w = 0; w < kWorks; ++w) weights[static_cast<std::size_t>(w)] = 1.0 / (1.0 + w * 0.05);
  std::discrete_distribution<int> pick(weights.begin(), weights.end());
  std::uniform_int_distribution<int> citing_year(1980, 2015);

  const char* venues[] = {"SCIENTOMETRICS", "J LARGE CORP 1", "J LARGE CORP 2", "RES POLICY"};
  std::ofstream out(path, std::ios::binary);
  out << "record_id,venue,citing_year,doc_type,cited_refs\n";
  for (std::size_t r = 0; r < n_records; ++r) {
    int year = citing_year(rng);
    std::string refs;
    int n_refs = 0;
    while (n_refs < 10) {
      const Work& w = works[static_cast<std::size_t>(pick(rng))];
      if (w.year > year) continue;
      const std::string& s = w.spellings[rng() % w.spellings.size()];
      if (!refs.empty()) refs += '|';
      refs += s;
      ++n_refs;
    }
    out << citespectro::csv::join({fmt::format("L{:06d}", r), venues[r % 4], std::to_string(year),
                                   r % 17 == 0 ? "Review" : "Article", refs})
        << '\n';
  }
}

std::filesystem::path temp_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("citespectro-test-" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace fixtures
