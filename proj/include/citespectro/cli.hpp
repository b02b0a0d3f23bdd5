#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "citespectro/corpus.hpp"

namespace citespectro::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitUsage = 64;

enum class InputFormat { WosPlain, WosTab, TestCsv };

struct RunConfig {
  std::vector<std::filesystem::path> input_paths;
  InputFormat input_format = InputFormat::WosPlain;
  std::optional<YearRange> rpy_range;
  double dedup_threshold = 0.75;
  std::set<DocType> doc_types{DocType::Article, DocType::Review, DocType::Letter, DocType::Other};
  std::optional<YearRange> year_range;
  std::filesystem::path output_dir = "citespectro-out";
  std::optional<std::filesystem::path> venue_aliases;
  unsigned threads = 1;
};

// Raised for bad flag or config values; maps to exit code 64.
struct UsageError {
  std::string message;
};

// key=value lines; '#' comments and blank lines ignored. Keys are the long
// flag names without dashes. Throws UsageError on a malformed line.
std::map<std::string, std::string> parse_config_text(std::string_view text);

// Builds the shared part of the configuration from effective settings.
RunConfig make_run_config(const std::map<std::string, std::string>& settings);

// Reads every input with the configured parser and merges the results.
// Warnings are written to `err` as "path:line: message".
Corpus load_inputs(const RunConfig& config, std::ostream& err);

// Entry point. args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace citespectro::cli
