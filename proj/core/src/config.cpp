#include "translag/config.hpp"

#include <charconv>
#include <fstream>

#include <fmt/format.h>

#include "translag/error.hpp"

namespace translag {

namespace fs = std::filesystem;

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(std::string_view value) {
  std::vector<std::string> out;
  while (true) {
    const auto comma = value.find(',');
    const auto item = trim(value.substr(0, comma));
    if (!item.empty()) out.emplace_back(item);
    if (comma == std::string_view::npos) break;
    value.remove_prefix(comma + 1);
  }
  return out;
}

template <typename T>
T parse_number(std::string_view key, std::string_view value) {
  T out{};
  const auto t = trim(value);
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), out);
  if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty()) {
    throw ConfigError(fmt::format("{}: '{}' is not a valid number", key, value));
  }
  return out;
}

fs::path resolve(const fs::path& base, std::string_view value) {
  fs::path p{std::string(trim(value))};
  if (p.is_relative() && !base.empty()) return base / p;
  return p;
}

void require_file(const std::optional<fs::path>& path, std::string_view field) {
  if (!path) throw ConfigError(fmt::format("{}: required but not set", field));
  if (!fs::exists(*path)) {
    throw ConfigError(fmt::format("{}: file '{}' does not exist", field, path->string()));
  }
}

}  // namespace

const std::vector<std::string_view>& config_keys() {
  static const std::vector<std::string_view> keys{
      "input",         "mesh",           "lexicon",         "pairs",
      "out_dir",       "year_min",       "year_max",        "basic_set",
      "clinical_set",  "coords",         "workers",         "corpus_size",
      "rules.c_prefixes", "rules.h_prefixes", "rules.a_prefixes", "rules.a_exceptions",
      "plot.resolution", "plot.r_min",   "plot.r_max",      "plot.width",
      "plot.height",   "plot.margin",
  };
  return keys;
}

void apply_setting(PipelineConfig& c, std::string_view key, std::string_view value,
                   const fs::path& base_dir) {
  key = trim(key);
  value = trim(value);
  if (key == "input") {
    for (const auto& item : split_list(value)) c.inputs.push_back(resolve(base_dir, item));
  } else if (key == "mesh") {
    c.mesh = resolve(base_dir, value);
  } else if (key == "lexicon") {
    c.lexicon = resolve(base_dir, value);
  } else if (key == "pairs") {
    c.pairs = resolve(base_dir, value);
  } else if (key == "out_dir") {
    c.out_dir = resolve(base_dir, value);
  } else if (key == "year_min") {
    c.window.first = parse_number<int>(key, value);
  } else if (key == "year_max") {
    c.window.last = parse_number<int>(key, value);
  } else if (key == "basic_set") {
    c.basic_set = LabelSet::parse(value);
  } else if (key == "clinical_set") {
    c.clinical_set = LabelSet::parse(value);
  } else if (key == "coords") {
    if (value == "normalized") {
      c.coord_mode = CoordMode::kNormalized;
    } else if (value == "raw") {
      c.coord_mode = CoordMode::kRaw;
    } else {
      throw ConfigError(fmt::format("coords: expected 'normalized' or 'raw', got '{}'", value));
    }
  } else if (key == "workers") {
    c.workers = parse_number<unsigned>(key, value);
  } else if (key == "corpus_size") {
    c.corpus_size = parse_number<std::uint64_t>(key, value);
  } else if (key == "rules.c_prefixes") {
    c.rules.c_prefixes = split_list(value);
  } else if (key == "rules.h_prefixes") {
    c.rules.h_prefixes = split_list(value);
  } else if (key == "rules.a_prefixes") {
    c.rules.a_prefixes = split_list(value);
  } else if (key == "rules.a_exceptions") {
    c.rules.a_exceptions = split_list(value);
  } else if (key == "plot.resolution") {
    c.resolution = parse_number<int>(key, value);
  } else if (key == "plot.r_min") {
    c.plot.r_min = parse_number<double>(key, value);
  } else if (key == "plot.r_max") {
    c.plot.r_max = parse_number<double>(key, value);
  } else if (key == "plot.width") {
    c.plot.width = parse_number<int>(key, value);
  } else if (key == "plot.height") {
    c.plot.height = parse_number<int>(key, value);
  } else if (key == "plot.margin") {
    c.plot.margin = parse_number<int>(key, value);
  } else {
    throw ConfigError(fmt::format("unknown configuration key '{}'", key));
  }
}

PipelineConfig load_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("config: cannot open '{}'", path.string()));
  PipelineConfig c;
  const fs::path base = path.parent_path();
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(fmt::format("{}:{}: expected 'key = value'", path.string(), line_no));
    }
    try {
      apply_setting(c, t.substr(0, eq), t.substr(eq + 1), base);
    } catch (const ConfigError& e) {
      throw ConfigError(fmt::format("{}:{}: {}", path.string(), line_no, e.what()));
    }
  }
  return c;
}

void PipelineConfig::validate(Stage stage) const {
  window.validate();
  if (basic_set.empty()) throw ConfigError("basic_set: must name at least one label");
  if (clinical_set.empty()) throw ConfigError("clinical_set: must name at least one label");
  if (basic_set.intersects(clinical_set)) {
    throw ConfigError(fmt::format("basic_set/clinical_set: label sets overlap ({} vs {})",
                                  basic_set.to_string(), clinical_set.to_string()));
  }
  try {
    rules.validate();
  } catch (const ValidationError& e) {
    throw ConfigError(e.what());
  }
  if (workers == 0) throw ConfigError("workers: must be at least 1");
  if (resolution <= 0) throw ConfigError("plot.resolution: must be positive");
  if (!(plot.r_min > 0.0) || plot.r_max < plot.r_min) {
    throw ConfigError("plot.r_min/plot.r_max: need 0 < r_min <= r_max");
  }
  if (plot.width <= 2 * plot.margin || plot.height <= 2 * plot.margin) {
    throw ConfigError("plot.width/plot.height: canvas smaller than twice the margin");
  }

  switch (stage) {
    case Stage::kIngest:
      if (inputs.empty()) throw ConfigError("input: at least one PubMed XML file is required");
      for (const auto& p : inputs) {
        if (!fs::exists(p)) throw ConfigError(fmt::format("input: file '{}' does not exist", p.string()));
      }
      break;
    case Stage::kClassify:
      require_file(mesh, "mesh");
      break;
    case Stage::kLink:
      if (pairs) {
        require_file(pairs, "pairs");
      } else {
        require_file(lexicon, "lexicon");
      }
      break;
    case Stage::kAnalyze:
    case Stage::kPlot:
      break;
  }
}

}  // namespace translag
