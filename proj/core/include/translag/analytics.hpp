#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "translag/classifier.hpp"
#include "translag/drug_linker.hpp"

namespace translag {

/// Inclusive calendar-year range.
struct YearWindow {
  int first = 1841;
  int last = 2018;

  bool contains(int year) const { return year >= first && year <= last; }
  std::size_t size() const { return static_cast<std::size_t>(last - first + 1); }
  /// Throws ConfigError when empty.
  void validate() const;
};

/// Set of article labels.
class LabelSet {
 public:
  LabelSet() = default;
  LabelSet(std::initializer_list<ArticleLabel> labels) {
    for (auto l : labels) insert(l);
  }

  /// Comma-separated names, e.g. "A,C,AC". Throws ConfigError on unknown names.
  static LabelSet parse(std::string_view text);

  void insert(ArticleLabel l) { bits_ |= bit(l); }
  bool contains(ArticleLabel l) const { return (bits_ & bit(l)) != 0; }
  bool empty() const { return bits_ == 0; }
  bool intersects(LabelSet other) const { return (bits_ & other.bits_) != 0; }
  std::string to_string() const;

  friend bool operator==(LabelSet, LabelSet) = default;

 private:
  static std::uint16_t bit(ArticleLabel l) {
    return static_cast<std::uint16_t>(1u << static_cast<unsigned>(l));
  }
  std::uint16_t bits_ = 0;
};

inline LabelSet default_basic_set() {
  return {ArticleLabel::kA, ArticleLabel::kC, ArticleLabel::kAC};
}
inline LabelSet default_clinical_set() {
  return {ArticleLabel::kH, ArticleLabel::kAH, ArticleLabel::kCH, ArticleLabel::kACH};
}

enum class TranslationStatus : std::uint8_t { kTranslated, kNonTranslated, kClinicalOnly, kAnomalous };

std::string_view status_name(TranslationStatus status);

struct DrugTimeline {
  std::string drug_id;
  std::optional<int> t_eb;  // earliest basic-article year
  std::optional<int> t_ec;  // earliest clinical-article year
  std::optional<int> lag;   // t_ec - t_eb + 1 when both are known
  TranslationStatus status = TranslationStatus::kNonTranslated;

  friend bool operator==(const DrugTimeline&, const DrugTimeline&) = default;
};

/// Applies the lag definition and assigns the status. At least one year
/// must be present.
DrugTimeline make_timeline(std::string drug_id, std::optional<int> t_eb, std::optional<int> t_ec);

struct TimelineTally {
  std::uint64_t pairs_unknown_pmid = 0;  // pmid absent from the classifications
  std::uint64_t drugs_unstaged = 0;      // no dated basic or clinical article
};

/// Fold/merge accumulator for per-drug earliest years.
class TimelineBuilder {
 public:
  TimelineBuilder(LabelSet basic = default_basic_set(), LabelSet clinical = default_clinical_set());

  /// Undated articles and labels outside both sets still register the
  /// drug but do not move its years.
  void add(const std::string& drug_id, const ArticleClassification& article);
  void merge(const TimelineBuilder& other);

  /// Sorted by drug_id. Drugs with neither year are left out and counted
  /// in `tally`.
  std::vector<DrugTimeline> finish(TimelineTally* tally = nullptr) const;

 private:
  struct Years {
    std::optional<int> basic;
    std::optional<int> clinical;
  };
  LabelSet basic_;
  LabelSet clinical_;
  std::map<std::string, Years, std::less<>> drugs_;
};

std::vector<DrugTimeline> drug_timelines(std::span<const DrugPair> pairs,
                                         std::span<const ArticleClassification> classifications,
                                         LabelSet basic = default_basic_set(),
                                         LabelSet clinical = default_clinical_set(),
                                         TimelineTally* tally = nullptr);

struct DistributionRow {
  ArticleLabel label = ArticleLabel::kOther;
  std::uint64_t count = 0;
  double pct_drug = 0.0;    // share of drug-related articles, 2 decimals
  double pct_corpus = 0.0;  // share of the whole corpus, 2 decimals
};

struct CorpusDistribution {
  std::array<DistributionRow, 8> rows{};  // kAllLabels order
  std::uint64_t total = 0;
  std::uint64_t corpus_size = 0;
  double total_pct_corpus = 0.0;

  const DistributionRow& row(ArticleLabel label) const { return rows[label_index(label)]; }
};

/// Rounds to two decimals, half away from zero.
double round_percent(double value);

CorpusDistribution corpus_distribution(const std::array<std::uint64_t, 8>& counts,
                                       std::uint64_t whole_corpus_size);
/// `classifications` should already be restricted to drug-related articles.
CorpusDistribution corpus_distribution(std::span<const ArticleClassification> classifications,
                                       std::uint64_t whole_corpus_size);

/// Dense per-year, per-label article counts over a window.
struct AnnualSeries {
  YearWindow window;
  std::vector<std::array<std::uint64_t, 8>> rows;  // one per year, kAllLabels order

  explicit AnnualSeries(YearWindow w = {});
  void add(const ArticleClassification& c);  // undated or out-of-window: ignored
  void merge(const AnnualSeries& other);
  const std::array<std::uint64_t, 8>& at(int year) const;
  std::uint64_t total() const;
};

AnnualSeries annual_series(std::span<const ArticleClassification> classifications,
                           YearWindow window);

struct AnnualDrugRow {
  std::uint64_t first_basic = 0;
  std::uint64_t first_clinical = 0;
  std::uint64_t non_translated = 0;      // t_eb == year and no clinical article
  std::uint64_t untranslated_stock = 0;  // t_eb <= year and no clinical article by year

  friend bool operator==(const AnnualDrugRow&, const AnnualDrugRow&) = default;
};

struct AnnualDrugSeries {
  YearWindow window;
  std::vector<AnnualDrugRow> rows;

  const AnnualDrugRow& at(int year) const;
};

AnnualDrugSeries annual_drug_series(std::span<const DrugTimeline> timelines, YearWindow window);

struct StatusCounts {
  std::uint64_t translated = 0;
  std::uint64_t non_translated = 0;
  std::uint64_t clinical_only = 0;
  std::uint64_t anomalous = 0;

  std::uint64_t total() const { return translated + non_translated + clinical_only + anomalous; }
};

StatusCounts status_counts(std::span<const DrugTimeline> timelines);

/// translated / all timelines. Throws DomainError on empty input.
double translation_rate(std::span<const DrugTimeline> timelines);

/// Lags of translated drugs only; anomalous timelines are excluded.
std::vector<int> translated_lags(std::span<const DrugTimeline> timelines);

struct LagStats {
  std::size_t n = 0;
  double mean = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double rate = 0.0;  // 1 / mean, exponential MLE
  double ks_stat = 0.0;
  double ks_p = 1.0;
};

/// Summary statistics and exponential fit for positive lags. Quartiles use
/// linear interpolation between order statistics; the fit is checked with
/// ks_test_binned_exponential. Throws DomainError when n < 2 or a lag is
/// not positive.
LagStats lag_stats(std::span<const int> lags);

// Stable text outputs.
void write_distribution_tsv(const CorpusDistribution& dist, std::ostream& out);
void write_annual_series_tsv(const AnnualSeries& series, std::ostream& out);
void write_annual_drug_series_tsv(const AnnualDrugSeries& series, std::ostream& out);
void write_timelines_tsv(std::span<const DrugTimeline> timelines, std::ostream& out);

}  // namespace translag
