// translag: command-line driver for the translational-lag pipeline.
//
//   translag ingest <input>... --out <path>
//   translag {classify|link|analyze|plot|pipeline} --config run.conf [overrides]
//
// Exit codes: 0 success, 1 usage/config, 2 data error, 3 I/O error.

#include <filesystem>
#include <iostream>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "translag/error.hpp"
#include "translag/pipeline.hpp"

namespace {

namespace fs = std::filesystem;
using translag::PipelineConfig;

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitIo = 3;

// Flag -> config key. Flags given on the command line win over the file.
struct Overrides {
  std::string config_path;
  std::vector<std::string> inputs;
  std::vector<std::string> raw_settings;  // --set key=value

  void attach(CLI::App& cmd) {
    cmd.add_option("--config,-c", config_path, "Flat key = value configuration file");
    cmd.add_option("--input", inputs, "PubMed baseline XML file (repeatable)");
    struct Flag {
      const char* name;
      const char* key;
      const char* help;
    };
    static const Flag kFlags[] = {
        {"--out-dir", "out_dir", "Directory for stage artifacts"},
        {"--mesh", "mesh", "MeSH descriptor file (XML or ASCII)"},
        {"--lexicon", "lexicon", "Drug lexicon TSV"},
        {"--pairs", "pairs", "Precomputed pmid<TAB>drug_id file, used instead of the lexicon"},
        {"--year-min", "year_min", "First year of the analysis window"},
        {"--year-max", "year_max", "Last year of the analysis window"},
        {"--basic-set", "basic_set", "Labels counted as basic research, e.g. A,C,AC"},
        {"--clinical-set", "clinical_set", "Labels counted as clinical research, e.g. H,AH,CH,ACH"},
        {"--coords", "coords", "normalized | raw"},
        {"--workers", "workers", "Parallel ingest workers"},
        {"--corpus-size", "corpus_size", "Whole-corpus article count for percentages"},
        {"--resolution", "plot.resolution", "Triangle bins per unit length"},
        {"--r-min", "plot.r_min", "Smallest circle radius (px)"},
        {"--r-max", "plot.r_max", "Largest circle radius (px)"},
        {"--width", "plot.width", "Canvas width (px)"},
        {"--height", "plot.height", "Canvas height (px)"},
    };
    slots_.reserve(std::size(kFlags));
    for (const auto& f : kFlags) {
      slots_.push_back({f.key, std::string()});
      cmd.add_option(f.name, slots_.back().second, f.help);
    }
    cmd.add_option("--set", raw_settings, "Any configuration key as key=value (repeatable)");
  }

  PipelineConfig build() const {
    PipelineConfig c = config_path.empty() ? PipelineConfig{} : translag::load_config(config_path);
    if (!inputs.empty()) {
      c.inputs.clear();
      for (const auto& in : inputs) c.inputs.emplace_back(in);
    }
    for (const auto& [key, value] : slots_) {
      if (!value.empty()) translag::apply_setting(c, key, value);
    }
    for (const auto& kv : raw_settings) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw translag::ConfigError("--set expects key=value, got '" + kv + "'");
      translag::apply_setting(c, kv.substr(0, eq), kv.substr(eq + 1));
    }
    return c;
  }

 private:
  std::vector<std::pair<std::string, std::string>> slots_;
};

int report(const char* kind, const std::exception& e, int code) {
  std::cerr << "translag: " << kind << ": " << e.what() << '\n';
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Translational lag analysis of PubMed drug research"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "translag 0.1.0");

  // ingest has its own positional form.
  auto* ingest = app.add_subcommand("ingest", "Parse PubMed baseline XML into line-delimited records");
  std::vector<std::string> ingest_inputs;
  std::string ingest_out;
  unsigned ingest_workers = 0;
  std::string ingest_config;
  ingest->add_option("inputs", ingest_inputs, "Baseline XML files (.xml or .xml.gz)");
  std::string ingest_out_dir;
  ingest->add_option("--out,-o", ingest_out, "Write only the records, to this path");
  ingest->add_option("--out-dir", ingest_out_dir, "Directory for articles.jsonl and its report");
  ingest->add_option("--workers", ingest_workers, "Files parsed in parallel");
  ingest->add_option("--config,-c", ingest_config, "Configuration file (inputs, out_dir, workers)");

  struct Command {
    CLI::App* app;
    void (*run)(const PipelineConfig&);
    std::unique_ptr<Overrides> overrides;
  };
  std::vector<Command> commands;
  auto add = [&](const char* name, const char* help, void (*fn)(const PipelineConfig&)) {
    auto* cmd = app.add_subcommand(name, help);
    auto ov = std::make_unique<Overrides>();
    ov->attach(*cmd);
    commands.push_back({cmd, fn, std::move(ov)});
  };
  add("classify", "Count A/C/H terms, label articles and place them on the triangle",
                       &translag::run_classify);
  add("link", "Link articles to drugs (lexicon matcher or --pairs drop-in)",
                   &translag::run_link);
  add("analyze", "Distribution, annual series, drug timelines and lag statistics",
                      &translag::run_analyze);
  add("plot", "Render the triangle of biomedicine as SVG", &translag::run_plot);
  add("pipeline", "Run every stage in order", &translag::run_pipeline);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (ingest->parsed()) {
      PipelineConfig c = ingest_config.empty() ? PipelineConfig{} : translag::load_config(ingest_config);
      if (!ingest_inputs.empty()) {
        c.inputs.clear();
        for (const auto& in : ingest_inputs) c.inputs.emplace_back(in);
      }
      if (ingest_workers > 0) c.workers = ingest_workers;
      if (!ingest_out_dir.empty()) c.out_dir = ingest_out_dir;
      translag::IngestSummary s;
      if (ingest_out.empty()) {
        s = translag::run_ingest(c);
      } else {
        c.validate(translag::Stage::kIngest);
        s = translag::ingest_files(c.inputs, ingest_out, c.workers);
      }
      std::cerr << fmt::format("ingest: {} records from {} citations in {} files ({} without PMID, {} duplicate)\n",
                               s.records, s.citations, s.files, s.skipped_no_pmid, s.duplicate_pmids);
      return 0;
    }
    for (const auto& cmd : commands) {
      if (!cmd.app->parsed()) continue;
      const PipelineConfig c = cmd.overrides->build();
      cmd.run(c);
      return 0;
    }
  } catch (const translag::ConfigError& e) {
    return report("configuration error", e, kExitUsage);
  } catch (const translag::IoError& e) {
    return report("I/O error", e, kExitIo);
  } catch (const fs::filesystem_error& e) {
    return report("I/O error", e, kExitIo);
  } catch (const translag::DataError& e) {
    return report("data error", e, kExitData);
  } catch (const std::exception& e) {
    return report("error", e, kExitData);
  }
  return kExitUsage;
}
