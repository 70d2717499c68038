#include "translag/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <unordered_map>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "translag/error.hpp"
#include "translag/ks_test.hpp"

namespace translag {

void YearWindow::validate() const {
  if (last < first) {
    throw ConfigError(fmt::format("year window [{}, {}] is empty", first, last));
  }
}

LabelSet LabelSet::parse(std::string_view text) {
  LabelSet out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    std::string_view item = text.substr(0, comma);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (!item.empty()) {
      const auto label = parse_label(item);
      if (!label) throw ConfigError(fmt::format("unknown article label '{}'", item));
      out.insert(*label);
    }
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

std::string LabelSet::to_string() const {
  std::string out;
  for (auto l : kAllLabels) {
    if (!contains(l)) continue;
    if (!out.empty()) out.push_back(',');
    out.append(label_name(l));
  }
  return out;
}

std::string_view status_name(TranslationStatus status) {
  switch (status) {
    case TranslationStatus::kTranslated: return "translated";
    case TranslationStatus::kNonTranslated: return "non_translated";
    case TranslationStatus::kClinicalOnly: return "clinical_only";
    case TranslationStatus::kAnomalous: return "anomalous";
  }
  return "unknown";
}

DrugTimeline make_timeline(std::string drug_id, std::optional<int> t_eb, std::optional<int> t_ec) {
  DrugTimeline t{std::move(drug_id), t_eb, t_ec, std::nullopt, TranslationStatus::kNonTranslated};
  if (t_eb && t_ec) {
    t.lag = *t_ec - *t_eb + 1;
    t.status = *t.lag >= 1 ? TranslationStatus::kTranslated : TranslationStatus::kAnomalous;
  } else if (t_eb) {
    t.status = TranslationStatus::kNonTranslated;
  } else if (t_ec) {
    t.status = TranslationStatus::kClinicalOnly;
  } else {
    throw DomainError("timeline for '" + t.drug_id + "' has neither a basic nor a clinical year");
  }
  return t;
}

TimelineBuilder::TimelineBuilder(LabelSet basic, LabelSet clinical)
    : basic_(basic), clinical_(clinical) {
  if (basic_.intersects(clinical_)) throw ConfigError("basic and clinical label sets overlap");
}

namespace {

void take_min(std::optional<int>& slot, std::optional<int> value) {
  if (value && (!slot || *value < *slot)) slot = value;
}

}  // namespace

void TimelineBuilder::add(const std::string& drug_id, const ArticleClassification& article) {
  auto it = drugs_.find(drug_id);
  if (it == drugs_.end()) it = drugs_.emplace(drug_id, Years{}).first;
  if (!article.year) return;
  if (basic_.contains(article.label)) take_min(it->second.basic, article.year);
  if (clinical_.contains(article.label)) take_min(it->second.clinical, article.year);
}

void TimelineBuilder::merge(const TimelineBuilder& other) {
  for (const auto& [id, years] : other.drugs_) {
    auto& mine = drugs_[id];
    take_min(mine.basic, years.basic);
    take_min(mine.clinical, years.clinical);
  }
}

std::vector<DrugTimeline> TimelineBuilder::finish(TimelineTally* tally) const {
  std::vector<DrugTimeline> out;
  out.reserve(drugs_.size());
  for (const auto& [id, years] : drugs_) {
    if (!years.basic && !years.clinical) {
      if (tally != nullptr) ++tally->drugs_unstaged;
      continue;
    }
    out.push_back(make_timeline(id, years.basic, years.clinical));
  }
  return out;
}

std::vector<DrugTimeline> drug_timelines(std::span<const DrugPair> pairs,
                                         std::span<const ArticleClassification> classifications,
                                         LabelSet basic, LabelSet clinical,
                                         TimelineTally* tally) {
  std::unordered_map<Pmid, const ArticleClassification*> by_pmid;
  by_pmid.reserve(classifications.size());
  for (const auto& c : classifications) by_pmid.emplace(c.pmid, &c);

  TimelineBuilder builder(basic, clinical);
  for (const auto& pair : pairs) {
    const auto it = by_pmid.find(pair.pmid);
    if (it == by_pmid.end()) {
      if (tally != nullptr) ++tally->pairs_unknown_pmid;
      continue;
    }
    builder.add(pair.drug_id, *it->second);
  }
  return builder.finish(tally);
}

double round_percent(double value) { return std::round(value * 100.0) / 100.0; }

CorpusDistribution corpus_distribution(const std::array<std::uint64_t, 8>& counts,
                                       std::uint64_t whole_corpus_size) {
  const std::uint64_t total = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
  if (total == 0) throw DomainError("distribution of an empty set of articles");
  if (whole_corpus_size < total) {
    throw DomainError(fmt::format("whole corpus size {} is smaller than the {} classified articles",
                                  whole_corpus_size, total));
  }
  CorpusDistribution d;
  d.total = total;
  d.corpus_size = whole_corpus_size;
  for (std::size_t i = 0; i < kAllLabels.size(); ++i) {
    auto& row = d.rows[i];
    row.label = kAllLabels[i];
    row.count = counts[i];
    row.pct_drug = round_percent(100.0 * static_cast<double>(counts[i]) / static_cast<double>(total));
    row.pct_corpus = round_percent(100.0 * static_cast<double>(counts[i]) /
                                   static_cast<double>(whole_corpus_size));
  }
  d.total_pct_corpus =
      round_percent(100.0 * static_cast<double>(total) / static_cast<double>(whole_corpus_size));
  return d;
}

CorpusDistribution corpus_distribution(std::span<const ArticleClassification> classifications,
                                       std::uint64_t whole_corpus_size) {
  std::array<std::uint64_t, 8> counts{};
  for (const auto& c : classifications) ++counts[label_index(c.label)];
  return corpus_distribution(counts, whole_corpus_size);
}

AnnualSeries::AnnualSeries(YearWindow w) : window(w) {
  window.validate();
  rows.assign(window.size(), {});
}

void AnnualSeries::add(const ArticleClassification& c) {
  if (!c.year || !window.contains(*c.year)) return;
  ++rows[static_cast<std::size_t>(*c.year - window.first)][label_index(c.label)];
}

void AnnualSeries::merge(const AnnualSeries& other) {
  if (other.window.first != window.first || other.window.last != window.last) {
    throw DomainError("cannot merge annual series over different windows");
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) rows[i][j] += other.rows[i][j];
  }
}

const std::array<std::uint64_t, 8>& AnnualSeries::at(int year) const {
  if (!window.contains(year)) throw DomainError(fmt::format("year {} outside window", year));
  return rows[static_cast<std::size_t>(year - window.first)];
}

std::uint64_t AnnualSeries::total() const {
  std::uint64_t sum = 0;
  for (const auto& r : rows) sum = std::accumulate(r.begin(), r.end(), sum);
  return sum;
}

AnnualSeries annual_series(std::span<const ArticleClassification> classifications,
                           YearWindow window) {
  AnnualSeries series(window);
  for (const auto& c : classifications) series.add(c);
  return series;
}

const AnnualDrugRow& AnnualDrugSeries::at(int year) const {
  if (!window.contains(year)) throw DomainError(fmt::format("year {} outside window", year));
  return rows[static_cast<std::size_t>(year - window.first)];
}

AnnualDrugSeries annual_drug_series(std::span<const DrugTimeline> timelines, YearWindow window) {
  window.validate();
  AnnualDrugSeries s{window, std::vector<AnnualDrugRow>(window.size())};
  // Stock as a difference array: a drug is "not yet translated" over
  // [t_eb, t_ec - 1], or from t_eb onward when it never reaches the clinic.
  std::vector<std::int64_t> delta(window.size() + 1, 0);
  auto bump = [&](int from, std::optional<int> until_exclusive) {
    const int lo = std::max(from, window.first);
    const int hi = until_exclusive ? std::min(*until_exclusive, window.last + 1) : window.last + 1;
    if (lo >= hi) return;
    delta[static_cast<std::size_t>(lo - window.first)] += 1;
    delta[static_cast<std::size_t>(hi - window.first)] -= 1;
  };

  for (const auto& t : timelines) {
    if (t.t_eb && window.contains(*t.t_eb)) {
      auto& row = s.rows[static_cast<std::size_t>(*t.t_eb - window.first)];
      ++row.first_basic;
      if (!t.t_ec) ++row.non_translated;
    }
    if (t.t_ec && window.contains(*t.t_ec)) {
      ++s.rows[static_cast<std::size_t>(*t.t_ec - window.first)].first_clinical;
    }
    if (t.t_eb) bump(*t.t_eb, t.t_ec);
  }
  std::int64_t running = 0;
  for (std::size_t i = 0; i < s.rows.size(); ++i) {
    running += delta[i];
    s.rows[i].untranslated_stock = static_cast<std::uint64_t>(running);
  }
  return s;
}

StatusCounts status_counts(std::span<const DrugTimeline> timelines) {
  StatusCounts c;
  for (const auto& t : timelines) {
    switch (t.status) {
      case TranslationStatus::kTranslated: ++c.translated; break;
      case TranslationStatus::kNonTranslated: ++c.non_translated; break;
      case TranslationStatus::kClinicalOnly: ++c.clinical_only; break;
      case TranslationStatus::kAnomalous: ++c.anomalous; break;
    }
  }
  return c;
}

double translation_rate(std::span<const DrugTimeline> timelines) {
  if (timelines.empty()) throw DomainError("translation rate of an empty set of drugs");
  const StatusCounts c = status_counts(timelines);
  return static_cast<double>(c.translated) / static_cast<double>(c.total());
}

std::vector<int> translated_lags(std::span<const DrugTimeline> timelines) {
  std::vector<int> lags;
  for (const auto& t : timelines) {
    if (t.status == TranslationStatus::kTranslated) lags.push_back(*t.lag);
  }
  return lags;
}

LagStats lag_stats(std::span<const int> lags) {
  if (lags.size() < 2) throw DomainError("lag statistics need at least two lags");
  std::vector<double> sorted;
  sorted.reserve(lags.size());
  for (const int lag : lags) {
    if (lag < 1) throw DomainError(fmt::format("lag {} is not positive", lag));
    sorted.push_back(lag);
  }
  std::sort(sorted.begin(), sorted.end());

  LagStats s;
  s.n = sorted.size();
  s.mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) / static_cast<double>(s.n);
  s.q1 = quantile_linear(sorted, 0.25);
  s.median = quantile_linear(sorted, 0.5);
  s.q3 = quantile_linear(sorted, 0.75);
  s.rate = 1.0 / s.mean;
  const KsResult ks = ks_test_binned_exponential(lags, s.mean);
  s.ks_stat = ks.statistic;
  s.ks_p = ks.p_value;
  return s;
}

namespace {

void check(std::ostream& out) {
  if (!out) throw IoError("write failed while writing table");
}

std::string optional_year(std::optional<int> y) { return y ? std::to_string(*y) : std::string(); }

}  // namespace

void write_distribution_tsv(const CorpusDistribution& dist, std::ostream& out) {
  fmt::print(out, "label\tcount\tpct_drug_related\tpct_corpus\n");
  for (const auto& row : dist.rows) {
    fmt::print(out, "{}\t{}\t{:.2f}\t{:.2f}\n", label_name(row.label), row.count, row.pct_drug,
               row.pct_corpus);
  }
  fmt::print(out, "Total\t{}\t{:.2f}\t{:.2f}\n", dist.total, 100.0, dist.total_pct_corpus);
  check(out);
}

void write_annual_series_tsv(const AnnualSeries& series, std::ostream& out) {
  fmt::print(out, "year");
  for (auto l : kAllLabels) fmt::print(out, "\t{}", label_name(l));
  fmt::print(out, "\n");
  for (std::size_t i = 0; i < series.rows.size(); ++i) {
    fmt::print(out, "{}", series.window.first + static_cast<int>(i));
    for (const auto v : series.rows[i]) fmt::print(out, "\t{}", v);
    fmt::print(out, "\n");
  }
  check(out);
}

void write_annual_drug_series_tsv(const AnnualDrugSeries& series, std::ostream& out) {
  fmt::print(out, "year\tfirst_basic\tfirst_clinical\tnon_translated\tuntranslated_stock\n");
  for (std::size_t i = 0; i < series.rows.size(); ++i) {
    const auto& r = series.rows[i];
    fmt::print(out, "{}\t{}\t{}\t{}\t{}\n", series.window.first + static_cast<int>(i),
               r.first_basic, r.first_clinical, r.non_translated, r.untranslated_stock);
  }
  check(out);
}

void write_timelines_tsv(std::span<const DrugTimeline> timelines, std::ostream& out) {
  fmt::print(out, "drug_id\tt_eb\tt_ec\tlag\tstatus\n");
  for (const auto& t : timelines) {
    fmt::print(out, "{}\t{}\t{}\t{}\t{}\n", t.drug_id, optional_year(t.t_eb),
               optional_year(t.t_ec), t.lag ? std::to_string(*t.lag) : std::string(),
               status_name(t.status));
  }
  check(out);
}

}  // namespace translag
