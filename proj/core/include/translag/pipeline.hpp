#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string_view>
#include <vector>

#include "translag/config.hpp"
#include "translag/pubmed_ingest.hpp"

namespace translag {

// Stage artifacts, relative to PipelineConfig::out_dir.
namespace artifacts {
inline constexpr std::string_view kArticles = "articles.jsonl";
inline constexpr std::string_view kIngestReport = "ingest_report.json";
inline constexpr std::string_view kClassifications = "classifications.jsonl";
inline constexpr std::string_view kClassifyReport = "classify_report.json";
inline constexpr std::string_view kPairs = "pairs.tsv";
inline constexpr std::string_view kLinkReport = "link_report.json";
inline constexpr std::string_view kDistribution = "distribution.tsv";
inline constexpr std::string_view kAnnualSeries = "annual_series.tsv";
inline constexpr std::string_view kTimelines = "timelines.tsv";
inline constexpr std::string_view kAnnualDrugSeries = "annual_drug_series.tsv";
inline constexpr std::string_view kSummary = "summary.json";
inline constexpr std::string_view kTriangle = "triangle.svg";
}  // namespace artifacts

/// Output file written under `<path>.partial` and renamed into place by
/// commit(). Without a commit the partial file stays behind for
/// inspection and the final path is left untouched.
class StagedFile {
 public:
  explicit StagedFile(std::filesystem::path final_path);
  ~StagedFile();
  StagedFile(const StagedFile&) = delete;
  StagedFile& operator=(const StagedFile&) = delete;

  std::ofstream& stream() { return out_; }
  void commit();

  static std::filesystem::path partial_path(const std::filesystem::path& final_path);

 private:
  std::filesystem::path final_;
  std::filesystem::path partial_;
  std::ofstream out_;
  bool committed_ = false;
};

struct IngestSummary {
  std::uint64_t files = 0;
  std::uint64_t citations = 0;
  std::uint64_t records = 0;
  std::uint64_t skipped_no_pmid = 0;
  std::uint64_t duplicate_pmids = 0;  // later copies dropped
};

/// Parses `inputs` with up to `workers` files in flight and writes one
/// article per line to `out`, in input-file order.
IngestSummary ingest_files(const std::vector<std::filesystem::path>& inputs,
                           const std::filesystem::path& out, unsigned workers = 1);

/// Writes the articles file and its report under out_dir.
IngestSummary run_ingest(const PipelineConfig& config);
void run_classify(const PipelineConfig& config);
void run_link(const PipelineConfig& config);
void run_analyze(const PipelineConfig& config);
void run_plot(const PipelineConfig& config);

/// All stages in order.
void run_pipeline(const PipelineConfig& config);

}  // namespace translag
