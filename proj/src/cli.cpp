#include "citespectro/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "citespectro/concept_symbol.hpp"
#include "citespectro/csv.hpp"
#include "citespectro/disambiguation.hpp"
#include "citespectro/error.hpp"
#include "citespectro/impact.hpp"
#include "citespectro/reference.hpp"
#include "citespectro/spectroscopy.hpp"
#include "citespectro/text.hpp"
#include "citespectro/trajectory.hpp"

namespace citespectro::cli {

namespace fs = std::filesystem;

std::map<std::string, std::string> parse_config_text(std::string_view text_in) {
  std::map<std::string, std::string> out;
  std::size_t lineno = 0;
  for (auto line : text::split(text_in, "\n")) {
    ++lineno;
    line = text::trim(line);
    if (line.empty() || line.front() == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string_view::npos) throw UsageError{fmt::format("config line {}: expected key=value", lineno)};
    std::string key(text::trim(line.substr(0, eq)));
    if (key.empty()) throw UsageError{fmt::format("config line {}: empty key", lineno)};
    out[key] = std::string(text::trim(line.substr(eq + 1)));
  }
  return out;
}

namespace {

std::optional<std::string> get(const std::map<std::string, std::string>& s, const std::string& key) {
  auto it = s.find(key);
  if (it == s.end() || it->second.empty()) return std::nullopt;
  return it->second;
}

YearRange parse_range(const std::string& key, const std::string& value) {
  auto parts = text::split(value, ":");
  if (parts.size() != 2) throw UsageError{fmt::format("--{} expects LO:HI, got '{}'", key, value)};
  auto lo = text::parse_int(parts[0]);
  auto hi = text::parse_int(parts[1]);
  if (!lo || !hi || *lo > *hi || *lo < kMinYear || *hi > kMaxYear) {
    throw UsageError{fmt::format("--{}: invalid range '{}'", key, value)};
  }
  return {static_cast<int>(*lo), static_cast<int>(*hi)};
}

long long parse_integer(const std::string& key, const std::string& value, long long min) {
  auto v = text::parse_int(value);
  if (!v || *v < min) throw UsageError{fmt::format("--{}: expected an integer >= {}, got '{}'", key, min, value)};
  return *v;
}

double parse_real(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != value.size()) throw UsageError{fmt::format("--{}: expected a number, got '{}'", key, value)};
  return v;
}

bool parse_bool(const std::string& key, const std::string& value) {
  std::string v = text::to_lower(value);
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw UsageError{fmt::format("--{}: expected true/false, got '{}'", key, value)};
}

}  // namespace

RunConfig make_run_config(const std::map<std::string, std::string>& s) {
  RunConfig c;
  if (auto v = get(s, "input")) {
    for (auto p : text::split(*v, ",")) {
      auto t = text::trim(p);
      if (!t.empty()) c.input_paths.emplace_back(std::string(t));
    }
  }
  if (auto v = get(s, "format")) {
    if (*v == "wos-plain") c.input_format = InputFormat::WosPlain;
    else if (*v == "wos-tab") c.input_format = InputFormat::WosTab;
    else if (*v == "test-csv") c.input_format = InputFormat::TestCsv;
    else throw UsageError{"--format must be one of wos-plain, wos-tab, test-csv"};
  }
  if (auto v = get(s, "rpy-range")) c.rpy_range = parse_range("rpy-range", *v);
  if (auto v = get(s, "year-range")) c.year_range = parse_range("year-range", *v);
  if (auto v = get(s, "dedup-threshold")) {
    c.dedup_threshold = parse_real("dedup-threshold", *v);
    if (!(c.dedup_threshold > 0.0 && c.dedup_threshold <= 1.0)) {
      throw UsageError{"--dedup-threshold must lie in (0, 1]"};
    }
  }
  if (auto v = get(s, "doc-types")) {
    c.doc_types.clear();
    for (auto p : text::split(*v, ",")) {
      std::string name = text::to_lower(text::trim(p));
      if (name.empty()) continue;
      if (name == "other") c.doc_types.insert(DocType::Other);
      else if (auto t = parse_doc_type(name); t != DocType::Other) c.doc_types.insert(t);
      else throw UsageError{fmt::format("--doc-types: unknown type '{}'", name)};
    }
    if (c.doc_types.empty()) throw UsageError{"--doc-types selects nothing"};
  }
  if (auto v = get(s, "out")) c.output_dir = *v;
  if (auto v = get(s, "venue-aliases")) c.venue_aliases = fs::path(*v);
  if (auto v = get(s, "threads")) c.threads = static_cast<unsigned>(parse_integer("threads", *v, 1));
  return c;
}

Corpus load_inputs(const RunConfig& config, std::ostream& err) {
  if (config.input_paths.empty()) throw UsageError{"no --input given"};
  std::vector<Corpus> parts;
  for (const auto& path : config.input_paths) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(path.string() + ": cannot open input file");
    Corpus part;
    switch (config.input_format) {
      case InputFormat::WosPlain: part = parse_wos_plaintext(in, path.string()); break;
      case InputFormat::WosTab: part = parse_wos_tabfile(in, path.string()); break;
      case InputFormat::TestCsv: part = parse_test_csv(in, path.string()); break;
    }
    for (const auto& w : part.ingest_warnings()) err << path.string() << ":" << w.line << ": " << w.message << "\n";
    parts.push_back(std::move(part));
  }
  Corpus merged = parts.size() == 1 ? std::move(parts.front()) : merge_corpora(parts);
  if (parts.size() > 1) {
    // only merge-time warnings are new
    std::size_t seen = 0;
    for (const auto& p : parts) seen += p.ingest_warnings().size();
    for (std::size_t i = seen; i < merged.ingest_warnings().size(); ++i) err << merged.ingest_warnings()[i].message << "\n";
  }
  Corpus filtered = filter_records(merged, config.doc_types, config.year_range.value_or(YearRange{}));
  return filtered;
}

namespace {

// Settings given on the command line; registered per subcommand so flags can
// follow the subcommand name.
struct FlagSet {
  std::map<std::string, std::string> values;
  std::vector<std::pair<std::string, CLI::Option*>> options;
  std::vector<std::string> inputs;
  CLI::Option* input_opt = nullptr;

  void add(CLI::App& app, const std::string& name, const std::string& help) {
    options.emplace_back(name, app.add_option("--" + name, values[name], help));
  }
  void add_flag(CLI::App& app, const std::string& name, const std::string& help) {
    auto* opt = app.add_flag_function(
        "--" + name, [this, name](std::int64_t) { values[name] = "true"; }, help);
    options.emplace_back(name, opt);
  }

  // Config-file values overridden by every flag actually given.
  std::map<std::string, std::string> effective(const std::map<std::string, std::string>& file) const {
    auto out = file;
    for (const auto& [name, opt] : options) {
      if (opt->count() > 0) out[name] = values.at(name);
    }
    if (input_opt && input_opt->count() > 0) {
      std::string joined;
      for (const auto& p : inputs) {
        if (!joined.empty()) joined += ",";
        joined += p;
      }
      out["input"] = joined;
    }
    return out;
  }
};

void add_shared(CLI::App& app, FlagSet& flags) {
  flags.input_opt = app.add_option("--input,-i", flags.inputs, "Input export file (repeatable)");
  flags.add(app, "format", "wos-plain | wos-tab | test-csv");
  flags.add(app, "out", "Output directory");
  flags.add(app, "config", "key=value config file; flags override it");
  flags.add(app, "threads", "Worker threads");
  flags.add(app, "doc-types", "Comma list of article,review,letter,other");
  flags.add(app, "year-range", "Citing-year filter LO:HI");
  flags.add(app, "rpy-range", "Referenced-year range LO:HI");
  flags.add(app, "dedup-threshold", "Similarity threshold for merging variants, (0,1]");
}

std::string render_config(const std::string& command, const std::map<std::string, std::string>& settings) {
  std::string out = "command=" + command + "\n";
  for (const auto& [k, v] : settings) {
    if (k == "config") continue;
    out += k + "=" + v + "\n";
  }
  return out;
}

void prepare_output(const RunConfig& config, const std::string& command,
                    const std::map<std::string, std::string>& settings) {
  std::error_code ec;
  fs::create_directories(config.output_dir, ec);
  if (ec || !fs::is_directory(config.output_dir)) {
    throw IoError(config.output_dir.string() + ": cannot create output directory");
  }
  csv::write_file_atomic(config.output_dir / "run.cfg", render_config(command, settings));
}

void write_output(const RunConfig& config, const std::string& name, std::string_view contents, std::ostream& out) {
  csv::write_file_atomic(config.output_dir / name, contents);
  out << "wrote " << (config.output_dir / name).string() << "\n";
}

ClusterOptions cluster_options(const RunConfig& config) {
  ClusterOptions o;
  o.threshold = config.dedup_threshold;
  o.threads = config.threads;
  return o;
}

int setting_int(const std::map<std::string, std::string>& s, const std::string& key, long long fallback, long long min) {
  auto v = get(s, key);
  return static_cast<int>(v ? parse_integer(key, *v, min) : fallback);
}

bool setting_bool(const std::map<std::string, std::string>& s, const std::string& key, bool fallback) {
  auto v = get(s, key);
  return v ? parse_bool(key, *v) : fallback;
}

std::string usage_hint(const CLI::App& app) { return app.help(); }

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"citespectro: reference publication year spectroscopy and citation analytics", "citespectro"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  struct Command {
    std::string name;
    CLI::App* app;
    FlagSet flags;
  };
  std::vector<std::unique_ptr<Command>> commands;
  auto add_command = [&](const std::string& name, const std::string& help) -> Command& {
    auto cmd = std::make_unique<Command>();
    cmd->name = name;
    cmd->app = app.add_subcommand(name, help);
    add_shared(*cmd->app, cmd->flags);
    commands.push_back(std::move(cmd));
    return *commands.back();
  };

  auto& ingest = add_command("ingest-check", "Parse inputs and report record, reference and warning counts");
  (void)ingest;
  auto& rpys_cmd = add_command("rpys", "RPYS curve (deviation from the moving median) as CSV");
  rpys_cmd.flags.add(*rpys_cmd.app, "window", "Moving median window (odd)");
  rpys_cmd.flags.add_flag(*rpys_cmd.app, "use-clusters", "Count disambiguated clusters");
  rpys_cmd.flags.add_flag(*rpys_cmd.app, "svg", "Also write an SVG line chart");
  auto& multi_cmd = add_command("multi-rpys", "Rank-transformed Multi-RPYS matrix as CSV and SVG heatmap");
  multi_cmd.flags.add(*multi_cmd.app, "window", "Moving median window (odd)");
  multi_cmd.flags.add_flag(*multi_cmd.app, "no-svg", "Skip the heatmap");
  auto& top_cmd = add_command("top-cited", "Most-cited references, with or without disambiguation");
  top_cmd.flags.add(*top_cmd.app, "n", "Number of rows");
  top_cmd.flags.add(*top_cmd.app, "dedup", "Merge variant strings before counting (true/false)");
  top_cmd.flags.add_flag(*top_cmd.app, "no-dedup", "Count exact strings only");
  auto& metrics_cmd = add_command("metrics", "Citation shares, half-lives and immediacy of one venue-year");
  metrics_cmd.flags.add(*metrics_cmd.app, "venue", "Venue name or abbreviation");
  metrics_cmd.flags.add(*metrics_cmd.app, "year", "Reference year");
  metrics_cmd.flags.add(*metrics_cmd.app, "venue-aliases", "Alias file of 'abbrev = full name' lines");
  metrics_cmd.flags.add(*metrics_cmd.app, "citable-items", "Citable items of the two previous years (per-item IF-2)");
  auto& traj_cmd = add_command("trajectories", "Yearly citation trajectories of the most-cited works");
  traj_cmd.flags.add(*traj_cmd.app, "top-n", "Number of works");
  traj_cmd.flags.add(*traj_cmd.app, "min-total", "Citations below which a work is flat");
  traj_cmd.flags.add(*traj_cmd.app, "early-share", "Transitory: share in years 1-5");
  traj_cmd.flags.add(*traj_cmd.app, "max-peak-offset", "Transitory: latest peak year offset");
  traj_cmd.flags.add(*traj_cmd.app, "onset-years", "Sticky: years before late onset");
  traj_cmd.flags.add(*traj_cmd.app, "late-share", "Sticky: share arriving after onset");
  traj_cmd.flags.add(*traj_cmd.app, "growth-factor", "Sticky: last-third over first-third rate");
  auto& sym_cmd = add_command("symbol", "Track a first author as a concept symbol");
  sym_cmd.flags.add(*sym_cmd.app, "author", "Author query, e.g. \"merton rk\"");
  sym_cmd.flags.add(*sym_cmd.app, "min-count", "Minimum documents per frequent citer");
  sym_cmd.flags.add_flag(*sym_cmd.app, "exact", "Exact author match instead of prefix");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << usage_hint(app);
    return kExitUsage;
  }

  Command* cmd = nullptr;
  for (auto& c : commands) {
    if (c->app->parsed()) cmd = c.get();
  }
  if (cmd == nullptr) {
    err << usage_hint(app);
    return kExitUsage;
  }

  std::map<std::string, std::string> settings;
  RunConfig config;
  try {
    std::map<std::string, std::string> file;
    auto direct = cmd->flags.effective({});
    if (auto path = get(direct, "config")) {
      std::string text_in;
      try {
        text_in = csv::read_file(*path);
      } catch (const IoError& e) {
        throw UsageError{e.what()};
      }
      file = parse_config_text(text_in);
    }
    settings = cmd->flags.effective(file);
    config = make_run_config(settings);
    if (config.input_paths.empty()) throw UsageError{"no --input given"};
  } catch (const UsageError& e) {
    err << "error: " << e.message << "\n" << cmd->app->help();
    return kExitUsage;
  }

  try {
    // Validate subcommand parameters before doing any work.
    const std::string& name = cmd->name;
    int window = 5, n = 10, top_n = 10, year = 0, min_count = 3;
    bool dedup = true;
    std::string venue, author;
    TrajectoryThresholds th;
    std::optional<long long> citable;
    try {
      if (name == "rpys" || name == "multi-rpys") window = setting_int(settings, "window", 5, 1);
      if (name == "top-cited") {
        n = setting_int(settings, "n", 10, 1);
        dedup = setting_bool(settings, "dedup", true) && !setting_bool(settings, "no-dedup", false);
      }
      if (name == "metrics") {
        auto v = get(settings, "venue");
        auto y = get(settings, "year");
        if (!v || !y) throw UsageError{"metrics needs --venue and --year"};
        venue = *v;
        year = static_cast<int>(parse_integer("year", *y, kMinYear));
        if (auto c = get(settings, "citable-items")) citable = parse_integer("citable-items", *c, 1);
      }
      if (name == "trajectories") {
        top_n = setting_int(settings, "top-n", 10, 0);
        th.min_total = setting_int(settings, "min-total", th.min_total, 0);
        th.max_peak_offset = setting_int(settings, "max-peak-offset", th.max_peak_offset, 0);
        th.onset_years = setting_int(settings, "onset-years", th.onset_years, 0);
        if (auto v = get(settings, "early-share")) th.early_share = parse_real("early-share", *v);
        if (auto v = get(settings, "late-share")) th.late_share = parse_real("late-share", *v);
        if (auto v = get(settings, "growth-factor")) th.growth_factor = parse_real("growth-factor", *v);
      }
      if (name == "symbol") {
        auto a = get(settings, "author");
        if (!a) throw UsageError{"symbol needs --author"};
        author = *a;
        min_count = setting_int(settings, "min-count", 3, 1);
      }
      if (window % 2 == 0) throw UsageError{"--window must be odd"};
    } catch (const UsageError& e) {
      err << "error: " << e.message << "\n" << cmd->app->help();
      return kExitUsage;
    }

    Corpus corpus = load_inputs(config, err);

    if (name == "ingest-check") {
      out << "records: " << corpus.size() << "\n";
      out << "references: " << corpus.total_raw_refs() << "\n";
      out << "warnings: " << corpus.ingest_warnings().size() << "\n";
      return kExitOk;
    }
    if (corpus.empty()) {
      err << "error: " << corpus.source_description() << ": no usable records\n";
      return kExitInput;
    }

    prepare_output(config, name, settings);
    ReferenceIndex index(corpus);

    if (name == "rpys") {
      RpysOptions opt;
      opt.window = window;
      opt.use_clusters = setting_bool(settings, "use-clusters", false);
      opt.clustering = cluster_options(config);
      auto curve = rpys(index, config.rpy_range, opt);
      write_output(config, "rpys_curve.csv", curve_csv(curve), out);
      if (setting_bool(settings, "svg", false)) write_output(config, "rpys_curve.svg", render_curve_svg(curve), out);
      out << "peaks:";
      for (int p : curve.peaks) out << " " << p;
      out << "\n";
    } else if (name == "multi-rpys") {
      auto matrix = multi_rpys(index, config.rpy_range, window);
      write_output(config, "multi_rpys.csv", matrix_csv(matrix), out);
      if (!setting_bool(settings, "no-svg", false)) {
        write_output(config, "multi_rpys.svg", render_heatmap_svg(matrix), out);
      }
    } else if (name == "top-cited") {
      ClusterOptions opt = cluster_options(config);
      if (!dedup) opt.threshold = 1.0;  // exact strings only
      auto clusters = cluster_index(index, opt);
      auto top = top_cited(clusters, static_cast<std::size_t>(n));
      std::string table = "rank,cited_reference,rpy,n_cr\n";
      for (std::size_t i = 0; i < top.size(); ++i) {
        const auto& [ref, count] = top[i];
        table += csv::join({std::to_string(i + 1), ref.raw, ref.rpy ? std::to_string(*ref.rpy) : "",
                            std::to_string(count)});
        table += '\n';
      }
      write_output(config, "top_cited.csv", table, out);
      write_output(config, "clusters.csv", clusters_csv(clusters), out);
    } else if (name == "metrics") {
      VenueAliases aliases;
      if (config.venue_aliases) aliases = VenueAliases::parse(csv::read_file(*config.venue_aliases));
      auto m = journal_year_metrics(index, venue, year, aliases);
      std::vector<JournalYearMetrics> rows{m};
      write_output(config, "metrics.csv", metrics_csv(rows), out);
      out << fmt::format("{} {}: total cites {}, 2-year share {}, 5-year share {}, >10-year share {}\n", venue, year,
                         m.total_cites, m.share_2yr.percent(), m.share_5yr.percent(), m.share_gt10yr.percent());
      if (citable) {
        out << fmt::format("per-item IF-2: {:.3f}\n", per_item_impact(m.share_2yr.numerator, *citable));
      }
    } else if (name == "trajectories") {
      auto clusters = cluster_index(index, cluster_options(config));
      write_output(config, "trajectories.csv", trajectory_table(index, clusters, static_cast<std::size_t>(top_n), th),
                   out);
    } else if (name == "symbol") {
      bool exact = setting_bool(settings, "exact", false);
      auto report = symbol_report(index, author, exact);
      write_output(config, "symbol_trend.csv", symbol_trend_csv(report), out);
      write_output(config, "symbol_citers.csv", citers_csv(frequent_citers(report, min_count)), out);
      Share share{report.n_citing_docs, std::max<long long>(1, report.corpus_docs)};
      out << fmt::format("{}: {} references in {} of {} documents ({})\n", report.author_query, report.n_refs,
                         report.n_citing_docs, report.corpus_docs, share.percent());
    }
    return kExitOk;
  } catch (const UsageError& e) {
    err << "error: " << e.message << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
}

}  // namespace citespectro::cli
