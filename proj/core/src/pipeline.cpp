#include "translag/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <exception>
#include <mutex>
#include <thread>
#include <unordered_set>

#include <fmt/format.h>
#include <json.hpp>

#include "translag/analytics.hpp"
#include "translag/classifier.hpp"
#include "translag/drug_linker.hpp"
#include "translag/error.hpp"
#include "translag/record_io.hpp"
#include "translag/triangle_plot.hpp"

namespace translag {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

StagedFile::StagedFile(fs::path final_path)
    : final_(std::move(final_path)), partial_(partial_path(final_)) {
  if (final_.has_parent_path()) fs::create_directories(final_.parent_path());
  out_.open(partial_, std::ios::binary | std::ios::trunc);
  if (!out_) throw IoError("cannot create " + partial_.string());
}

StagedFile::~StagedFile() = default;

fs::path StagedFile::partial_path(const fs::path& final_path) {
  fs::path p = final_path;
  p += ".partial";
  return p;
}

void StagedFile::commit() {
  if (committed_) return;
  out_.flush();
  if (!out_) throw IoError("write failed on " + partial_.string());
  out_.close();
  std::error_code ec;
  fs::rename(partial_, final_, ec);
  if (ec) throw IoError("cannot move " + partial_.string() + " into place: " + ec.message());
  committed_ = true;
}

namespace {

fs::path artifact(const PipelineConfig& c, std::string_view name) { return c.out_dir / name; }

void require_artifact(const fs::path& path, std::string_view producer) {
  if (!fs::exists(path)) {
    throw ConfigError(fmt::format("missing input '{}' (run `{}` first)", path.string(), producer));
  }
}

std::ifstream open_input(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return in;
}

void write_json(const fs::path& path, const Json& j) {
  StagedFile f(path);
  f.stream() << j.dump(2) << '\n';
  f.commit();
}

// Lines produced by to_json_line start with {"pmid":<digits>,
std::optional<Pmid> leading_pmid(std::string_view line) {
  constexpr std::string_view kPrefix = "{\"pmid\":";
  if (!line.starts_with(kPrefix)) return std::nullopt;
  line.remove_prefix(kPrefix.size());
  Pmid v = 0;
  auto [ptr, ec] = std::from_chars(line.data(), line.data() + line.size(), v);
  if (ec != std::errc{}) return std::nullopt;
  return v;
}

Json lag_stats_json(const LagStats& s) {
  Json j;
  j["n"] = s.n;
  j["mean"] = s.mean;
  j["q1"] = s.q1;
  j["median"] = s.median;
  j["q3"] = s.q3;
  j["rate"] = s.rate;
  j["ks_stat"] = s.ks_stat;
  j["ks_p"] = s.ks_p;
  return j;
}

std::vector<DrugPair> load_stage_pairs(const PipelineConfig& c) {
  const fs::path path = artifact(c, artifacts::kPairs);
  require_artifact(path, "link");
  auto in = open_input(path);
  return read_pairs(in);
}

}  // namespace

IngestSummary ingest_files(const std::vector<fs::path>& inputs, const fs::path& out,
                           unsigned workers) {
  IngestSummary summary;
  summary.files = inputs.size();
  std::vector<fs::path> parts(inputs.size());
  std::vector<IngestTally> tallies(inputs.size());
  std::vector<std::exception_ptr> errors(inputs.size());
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    parts[i] = out;
    parts[i] += fmt::format(".part{}.partial", i);
  }
  if (out.has_parent_path()) fs::create_directories(out.parent_path());

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < inputs.size(); i = next++) {
      try {
        std::ofstream part(parts[i], std::ios::binary | std::ios::trunc);
        if (!part) throw IoError("cannot create " + parts[i].string());
        CitationReader reader(open_source(inputs[i]));
        RecordWriter writer(part);
        while (auto record = reader.next()) writer.write(*record);
        part.flush();
        if (!part) throw IoError("write failed on " + parts[i].string(), writer.count());
        tallies[i] = reader.tally();
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  {
    const std::size_t n = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(inputs.size(), 1));
    std::vector<std::jthread> pool;
    for (std::size_t t = 1; t < n; ++t) pool.emplace_back(work);
    work();
  }
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (!errors[i]) continue;
    try {
      std::rethrow_exception(errors[i]);
    } catch (const ParseError& e) {
      throw ParseError(inputs[i].string() + ": " + e.what(), e.byte_offset());
    } catch (const Error& e) {
      throw DataError(inputs[i].string() + ": " + e.what());
    }
  }

  StagedFile staged(out);
  std::unordered_set<Pmid> seen;
  std::string line;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    summary.citations += tallies[i].citations;
    summary.skipped_no_pmid += tallies[i].skipped_no_pmid;
    std::ifstream part = open_input(parts[i]);
    while (std::getline(part, line)) {
      const auto pmid = leading_pmid(line);
      if (!pmid) throw DataError("corrupt intermediate line in " + parts[i].string());
      if (!seen.insert(*pmid).second) {
        ++summary.duplicate_pmids;
        continue;
      }
      staged.stream() << line << '\n';
      ++summary.records;
    }
    if (!staged.stream()) throw IoError("write failed on " + out.string(), summary.records);
  }
  staged.commit();
  for (const auto& p : parts) fs::remove(p);
  return summary;
}

IngestSummary run_ingest(const PipelineConfig& c) {
  c.validate(Stage::kIngest);
  const IngestSummary s = ingest_files(c.inputs, artifact(c, artifacts::kArticles), c.workers);
  Json j;
  j["files"] = s.files;
  j["citations"] = s.citations;
  j["records"] = s.records;
  j["skipped_no_pmid"] = s.skipped_no_pmid;
  j["duplicate_pmids"] = s.duplicate_pmids;
  write_json(artifact(c, artifacts::kIngestReport), j);
  return s;
}

void run_classify(const PipelineConfig& c) {
  c.validate(Stage::kClassify);
  const fs::path input = artifact(c, artifacts::kArticles);
  require_artifact(input, "ingest");
  const MeshIndex index = load_descriptors(*c.mesh, c.rules);

  auto in = open_input(input);
  RecordReader reader(in);
  StagedFile out(artifact(c, artifacts::kClassifications));
  ClassificationWriter writer(out.stream());
  ClassifyTally tally;
  while (auto record = reader.next()) {
    writer.write(classify_article(*record, index, c.coord_mode, &tally));
  }
  out.commit();

  Json j;
  j["articles"] = tally.articles;
  j["unknown_descriptors"] = tally.unknown_descriptors;
  Json by_label;
  for (std::size_t i = 0; i < kAllLabels.size(); ++i) {
    by_label[std::string(label_name(kAllLabels[i]))] = tally.by_label[i];
  }
  j["by_label"] = by_label;
  j["coords"] = c.coord_mode == CoordMode::kNormalized ? "normalized" : "raw";
  Json mesh;
  mesh["descriptors"] = index.size();
  mesh["records"] = index.tally().records;
  mesh["duplicates"] = index.tally().duplicates;
  mesh["without_tree_numbers"] = index.tally().without_tree_numbers;
  mesh["invalid_tree_numbers"] = index.tally().invalid_tree_numbers;
  j["mesh"] = mesh;
  write_json(artifact(c, artifacts::kClassifyReport), j);
}

void run_link(const PipelineConfig& c) {
  c.validate(Stage::kLink);
  Json j;
  StagedFile out(artifact(c, artifacts::kPairs));
  if (c.pairs) {
    auto in = open_input(*c.pairs);
    std::vector<DrugPair> pairs = read_pairs(in);
    const std::size_t read = pairs.size();
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    write_pairs(pairs, out.stream());
    j["source"] = "pairs";
    j["pairs_read"] = read;
    j["pairs"] = pairs.size();
  } else {
    const fs::path input = artifact(c, artifacts::kArticles);
    require_artifact(input, "ingest");
    const DrugLexicon lexicon = load_lexicon(*c.lexicon);
    const DrugMatcher matcher(lexicon);
    auto in = open_input(input);
    RecordReader reader(in);
    std::uint64_t articles = 0;
    std::uint64_t linked = 0;
    std::uint64_t pairs = 0;
    while (auto record = reader.next()) {
      ++articles;
      const auto found = link_article(*record, matcher);
      if (!found.empty()) ++linked;
      for (const auto& p : found) write_pair(p, out.stream());
      pairs += found.size();
    }
    j["source"] = "lexicon";
    j["lexicon_entries"] = lexicon.tally().entries;
    j["lexicon_dropped_short_forms"] = lexicon.tally().dropped_short_forms;
    j["lexicon_entries_without_forms"] = lexicon.tally().entries_without_forms;
    j["articles"] = articles;
    j["articles_with_mentions"] = linked;
    j["pairs"] = pairs;
  }
  out.commit();
  write_json(artifact(c, artifacts::kLinkReport), j);
}

void run_analyze(const PipelineConfig& c) {
  c.validate(Stage::kAnalyze);
  const std::vector<DrugPair> pairs = load_stage_pairs(c);
  const fs::path input = artifact(c, artifacts::kClassifications);
  require_artifact(input, "classify");

  std::unordered_set<Pmid> drug_pmids;
  for (const auto& p : pairs) drug_pmids.insert(p.pmid);

  std::uint64_t classified = 0;
  std::vector<ArticleClassification> drug_related;
  {
    auto in = open_input(input);
    ClassificationReader reader(in);
    while (auto cls = reader.next()) {
      ++classified;
      if (drug_pmids.contains(cls->pmid)) drug_related.push_back(std::move(*cls));
    }
  }
  const std::uint64_t corpus_size = c.corpus_size.value_or(classified);

  const CorpusDistribution dist = corpus_distribution(drug_related, corpus_size);
  const AnnualSeries series = annual_series(drug_related, c.window);
  TimelineTally tally;
  const auto timelines = drug_timelines(pairs, drug_related, c.basic_set, c.clinical_set, &tally);
  const AnnualDrugSeries drug_series = annual_drug_series(timelines, c.window);
  const StatusCounts statuses = status_counts(timelines);
  const std::vector<int> lags = translated_lags(timelines);

  auto write_table = [&](std::string_view name, auto&& writer) {
    StagedFile f(artifact(c, name));
    writer(f.stream());
    f.commit();
  };
  write_table(artifacts::kDistribution, [&](std::ostream& o) { write_distribution_tsv(dist, o); });
  write_table(artifacts::kAnnualSeries, [&](std::ostream& o) { write_annual_series_tsv(series, o); });
  write_table(artifacts::kTimelines, [&](std::ostream& o) { write_timelines_tsv(timelines, o); });
  write_table(artifacts::kAnnualDrugSeries,
              [&](std::ostream& o) { write_annual_drug_series_tsv(drug_series, o); });

  Json j;
  j["corpus_articles"] = corpus_size;
  j["drug_related_articles"] = dist.total;
  j["drug_related_pct_corpus"] = dist.total_pct_corpus;
  j["drugs"] = timelines.size();
  j["drugs_unstaged"] = tally.drugs_unstaged;
  j["pairs_unknown_pmid"] = tally.pairs_unknown_pmid;
  Json status;
  status["translated"] = statuses.translated;
  status["non_translated"] = statuses.non_translated;
  status["clinical_only"] = statuses.clinical_only;
  status["anomalous"] = statuses.anomalous;
  j["status"] = status;
  j["translation_rate"] = timelines.empty() ? Json(nullptr) : Json(translation_rate(timelines));
  j["lag"] = lags.size() >= 2 ? lag_stats_json(lag_stats(lags)) : Json(nullptr);
  j["basic_set"] = c.basic_set.to_string();
  j["clinical_set"] = c.clinical_set.to_string();
  j["year_min"] = c.window.first;
  j["year_max"] = c.window.last;
  write_json(artifact(c, artifacts::kSummary), j);
}

void run_plot(const PipelineConfig& c) {
  c.validate(Stage::kPlot);
  const std::vector<DrugPair> pairs = load_stage_pairs(c);
  const fs::path input = artifact(c, artifacts::kClassifications);
  require_artifact(input, "classify");

  std::unordered_set<Pmid> drug_pmids;
  for (const auto& p : pairs) drug_pmids.insert(p.pmid);

  std::vector<PlotPoint> points;
  auto in = open_input(input);
  ClassificationReader reader(in);
  while (auto cls = reader.next()) {
    if (!cls->coord || !drug_pmids.contains(cls->pmid)) continue;
    points.push_back(PlotPoint{*cls->coord, cls->label, cls->pmid});
  }
  const auto bins = bin_points(points, c.resolution);
  StagedFile out(artifact(c, artifacts::kTriangle));
  out.stream() << render_svg(bins, c.plot);
  out.commit();
}

void run_pipeline(const PipelineConfig& c) {
  run_ingest(c);
  run_classify(c);
  run_link(c);
  run_analyze(c);
  run_plot(c);
}

}  // namespace translag
