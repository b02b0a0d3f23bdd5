#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "citespectro/corpus.hpp"
#include "citespectro/trajectory.hpp"

namespace fixtures {

using citespectro::Corpus;
using citespectro::PublicationRecord;

PublicationRecord record(std::string id, std::string venue, int year, std::vector<std::string> refs,
                         std::string first_author = {});

// Distinct, well-formed reference string for a work published in `rpy`.
std::string synthetic_ref(int rpy, int serial);

// One record per citing year holding counts[citing_year][rpy] references to
// distinct synthetic works of that year.
Corpus corpus_from_counts(const std::map<int, std::map<int, int>>& counts);

// Counts 2,2,9,2,2 over RPY 1924-1928 cited from 1978.
Corpus lotka_spike();

// Citing years 1986-2015, every year citing mostly the previous year, with a
// thin background; RPY range 1916-2015.
Corpus research_front();
inline constexpr citespectro::YearRange kWideRange{1916, 2015};

// Every citing year 1986-2015 spikes at RPY 1926 over random background.
Corpus classic_spike();

inline const std::string kHirsch = "hirsch je, 2005, p natl acad sci usa, v102, p16569";

// 306 exact Hirsch strings, two source-abbreviation variants and distractors
// shaped like the Scientometrics top-10.
std::vector<std::string> planted_variant_refs();
Corpus planted_variant_corpus();

// Per-string counts of the Gene top-10 as exported without disambiguation.
std::vector<std::pair<std::string, int>> gene_top10();

// 98 citations in 2014 to "soz welt": 9 to 2013, 3 to 2012, 23 at ages 3-10,
// 63 older than ten years. Also carries Soziale Welt's own 2014 papers.
Corpus soziale_welt_metrics();
inline constexpr const char* kSozWeltFull = "SOZIALE WELT-ZEITSCHRIFT FUR SOZIALWISSENSCHAFTLICHE FORSCHUNG UND PRAXIS";
inline constexpr const char* kSozWeltAbbrev = "soz welt";

// Eight papers of "j test venue" in 2010, three cited in 2010.
Corpus immediacy_fixture();

// 5,677 documents in Scientometrics and Social Studies of Science; 391 of
// them cite Merton 595 times; 22 authors cite him in 85 documents.
Corpus merton_corpus();

// Yearly shapes of the three named exemplars and of low-level noise.
citespectro::Trajectory kamihara_shape();
citespectro::Trajectory latour_shape();
citespectro::Trajectory coleman_shape();
std::vector<citespectro::Trajectory> noise_shapes();  // nine works

// Turns trajectories into a corpus: one citing record per citation.
Corpus corpus_from_trajectories(const std::vector<citespectro::Trajectory>& ts, const std::string& venue);

// Writes `records` citing records (test CSV format) drawn from a fixed pool
// of works with planted spelling variants. Deterministic for a given seed.
void write_large_corpus(const std::filesystem::path& path, std::size_t records, unsigned seed = 20160102);

// Fresh empty directory under the system temp dir.
std::filesystem::path temp_dir(const std::string& name);

}  // namespace fixtures
