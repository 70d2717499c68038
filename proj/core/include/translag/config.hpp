#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "translag/analytics.hpp"
#include "translag/classifier.hpp"
#include "translag/mesh_index.hpp"
#include "translag/triangle_plot.hpp"

namespace translag {

enum class Stage { kIngest, kClassify, kLink, kAnalyze, kPlot };

struct PipelineConfig {
  std::vector<std::filesystem::path> inputs;
  std::optional<std::filesystem::path> mesh;
  std::optional<std::filesystem::path> lexicon;
  std::optional<std::filesystem::path> pairs;  // precomputed links, used instead of the lexicon
  std::filesystem::path out_dir = "out";

  CategoryRuleSet rules = CategoryRuleSet::defaults();
  YearWindow window{1841, 2018};
  LabelSet basic_set = default_basic_set();
  LabelSet clinical_set = default_clinical_set();
  CoordMode coord_mode = CoordMode::kNormalized;

  int resolution = 100;
  PlotOptions plot;

  unsigned workers = 1;
  std::optional<std::uint64_t> corpus_size;  // defaults to the number of ingested articles

  /// Throws ConfigError naming the offending field. Only the paths that
  /// `stage` reads are required to exist.
  void validate(Stage stage) const;
};

/// Applies one `key = value` setting. Relative paths resolve against
/// `base_dir`. Throws ConfigError for unknown keys or bad values.
void apply_setting(PipelineConfig& config, std::string_view key, std::string_view value,
                   const std::filesystem::path& base_dir = {});

/// Flat key-value file: one `key = value` per line, '#' comments. Paths
/// are relative to the file's directory.
PipelineConfig load_config(const std::filesystem::path& path);

/// Keys understood by apply_setting, for help output.
const std::vector<std::string_view>& config_keys();

}  // namespace translag
