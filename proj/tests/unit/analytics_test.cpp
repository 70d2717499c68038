#include "translag/analytics.hpp"

#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "translag/error.hpp"

namespace translag {
namespace {

ArticleClassification art(Pmid pmid, std::optional<int> year, ArticleLabel label) {
  return {.pmid = pmid, .year = year, .counts = {}, .label = label, .coord = std::nullopt};
}

TEST(Timeline, LagIsInclusiveYearDifference) {
  const auto t = make_timeline("D", 1990, 2000);
  EXPECT_EQ(t.lag, 11);
  EXPECT_EQ(t.status, TranslationStatus::kTranslated);
}

TEST(Timeline, SameYearIsLagOne) {
  const auto t = make_timeline("D", 1975, 1975);
  EXPECT_EQ(t.lag, 1);
  EXPECT_EQ(t.status, TranslationStatus::kTranslated);
}

TEST(Timeline, ClinicalBeforeBasicIsAnomalous) {
  const auto t = make_timeline("D", 2000, 1998);
  EXPECT_EQ(t.lag, -1);
  EXPECT_EQ(t.status, TranslationStatus::kAnomalous);
  EXPECT_EQ(make_timeline("D", 2000, 1999).status, TranslationStatus::kAnomalous);
}

TEST(Timeline, OneSidedStatuses) {
  EXPECT_EQ(make_timeline("D", 1980, std::nullopt).status, TranslationStatus::kNonTranslated);
  EXPECT_EQ(make_timeline("D", std::nullopt, 1980).status, TranslationStatus::kClinicalOnly);
  EXPECT_EQ(make_timeline("D", std::nullopt, 1980).lag, std::nullopt);
  EXPECT_THROW(make_timeline("D", std::nullopt, std::nullopt), DomainError);
}

TEST(Timeline, LagMatchesDefinitionExhaustively) {
  for (int eb = 1950; eb <= 2000; eb += 7) {
    for (int ec = 1940; ec <= 2010; ++ec) {
      const auto t = make_timeline("D", eb, ec);
      ASSERT_EQ(*t.lag, ec - eb + 1);
      ASSERT_EQ(t.status == TranslationStatus::kTranslated, ec >= eb);
    }
  }
}

TEST(DrugTimelines, EarliestYearsPerSet) {
  std::vector<ArticleClassification> cls{
      art(1, 1980, ArticleLabel::kA),  art(2, 1975, ArticleLabel::kAC), art(3, 1990, ArticleLabel::kH),
      art(4, 1985, ArticleLabel::kACH), art(5, std::nullopt, ArticleLabel::kC),
      art(6, 1960, ArticleLabel::kOther), art(7, 1970, ArticleLabel::kCH)};
  std::vector<DrugPair> pairs{{1, "X"}, {2, "X"}, {3, "X"}, {4, "X"}, {5, "Y"}, {6, "Y"},
                              {7, "Z"}, {99, "Z"}};
  TimelineTally tally;
  const auto tl = drug_timelines(pairs, cls, default_basic_set(), default_clinical_set(), &tally);
  ASSERT_EQ(tl.size(), 2u);
  EXPECT_EQ(tl[0], make_timeline("X", 1975, 1985));
  EXPECT_EQ(tl[1], make_timeline("Z", std::nullopt, 1970));
  EXPECT_EQ(tally.drugs_unstaged, 1u);
  EXPECT_EQ(tally.pairs_unknown_pmid, 1u);
}

TEST(DrugTimelines, CustomClinicalSet) {
  std::vector<ArticleClassification> cls{art(1, 1980, ArticleLabel::kA), art(2, 1982, ArticleLabel::kAH),
                                         art(3, 1990, ArticleLabel::kH)};
  std::vector<DrugPair> pairs{{1, "X"}, {2, "X"}, {3, "X"}};
  const auto tl = drug_timelines(pairs, cls, default_basic_set(), LabelSet{ArticleLabel::kH});
  EXPECT_EQ(tl[0].lag, 11);
}

TEST(DrugTimelines, OverlappingSetsRejected) {
  EXPECT_THROW(TimelineBuilder(LabelSet{ArticleLabel::kA}, LabelSet{ArticleLabel::kA}), ConfigError);
}

TEST(TimelineBuilder, MergeEqualsSequentialFold) {
  std::mt19937_64 rng(8);
  std::vector<std::pair<std::string, ArticleClassification>> items;
  for (int i = 0; i < 400; ++i) {
    items.emplace_back("D" + std::to_string(rng() % 30),
                       art(i, 1950 + static_cast<int>(rng() % 60), kAllLabels[rng() % 8]));
  }
  TimelineBuilder whole, left, right;
  for (std::size_t i = 0; i < items.size(); ++i) {
    whole.add(items[i].first, items[i].second);
    (i % 2 == 0 ? left : right).add(items[i].first, items[i].second);
  }
  left.merge(right);
  EXPECT_EQ(left.finish(), whole.finish());
}

TEST(Distribution, PercentagesOfDrugRelatedAndCorpus) {
  std::array<std::uint64_t, 8> counts{};
  counts[label_index(ArticleLabel::kH)] = 4;
  counts[label_index(ArticleLabel::kA)] = 6;
  const auto d = corpus_distribution(counts, 40);
  EXPECT_EQ(d.total, 10u);
  EXPECT_DOUBLE_EQ(d.row(ArticleLabel::kH).pct_drug, 40.0);
  EXPECT_DOUBLE_EQ(d.row(ArticleLabel::kH).pct_corpus, 10.0);
  EXPECT_DOUBLE_EQ(d.total_pct_corpus, 25.0);
}

TEST(Distribution, RoundsToTwoDecimals) {
  std::array<std::uint64_t, 8> counts{};
  counts[0] = 1;
  counts[1] = 2;
  const auto d = corpus_distribution(counts, 3);
  EXPECT_DOUBLE_EQ(d.rows[0].pct_drug, 33.33);
  EXPECT_DOUBLE_EQ(d.rows[1].pct_drug, 66.67);
  EXPECT_DOUBLE_EQ(round_percent(0.125), 0.13);
  EXPECT_DOUBLE_EQ(round_percent(-0.125), -0.13);
}

TEST(Distribution, InvalidInputs) {
  std::array<std::uint64_t, 8> counts{};
  EXPECT_THROW(corpus_distribution(counts, 10), DomainError);
  counts[0] = 5;
  EXPECT_THROW(corpus_distribution(counts, 4), DomainError);
}

TEST(Distribution, TsvLayout) {
  std::array<std::uint64_t, 8> counts{};
  counts[label_index(ArticleLabel::kH)] = 4;
  counts[label_index(ArticleLabel::kOther)] = 6;
  std::ostringstream out;
  write_distribution_tsv(corpus_distribution(counts, 20), out);
  EXPECT_EQ(out.str(),
            "label\tcount\tpct_drug_related\tpct_corpus\n"
            "A\t0\t0.00\t0.00\nC\t0\t0.00\t0.00\nH\t4\t40.00\t20.00\nAC\t0\t0.00\t0.00\n"
            "AH\t0\t0.00\t0.00\nCH\t0\t0.00\t0.00\nACH\t0\t0.00\t0.00\nOther\t6\t60.00\t30.00\n"
            "Total\t10\t100.00\t50.00\n");
}

TEST(AnnualSeries, DenseWindowIgnoresOutsiders) {
  std::vector<ArticleClassification> cls{art(1, 1990, ArticleLabel::kA), art(2, 1990, ArticleLabel::kA),
                                         art(3, 1992, ArticleLabel::kOther), art(4, 1980, ArticleLabel::kH),
                                         art(5, std::nullopt, ArticleLabel::kH)};
  const auto s = annual_series(cls, {1990, 1992});
  EXPECT_EQ(s.rows.size(), 3u);
  EXPECT_EQ(s.at(1990)[label_index(ArticleLabel::kA)], 2u);
  EXPECT_EQ(s.at(1991), (std::array<std::uint64_t, 8>{}));
  EXPECT_EQ(s.at(1992)[label_index(ArticleLabel::kOther)], 1u);
  EXPECT_EQ(s.total(), 3u);
  EXPECT_THROW(YearWindow({2000, 1999}).validate(), ConfigError);
}

TEST(AnnualDrugSeries, AgreesWithPerYearOracle) {
  std::mt19937_64 rng(17);
  std::vector<DrugTimeline> tl;
  for (int i = 0; i < 300; ++i) {
    std::optional<int> eb, ec;
    const auto kind = rng() % 3;
    if (kind != 1) eb = 1950 + static_cast<int>(rng() % 50);
    if (kind != 0 || rng() % 2 == 0) ec = 1950 + static_cast<int>(rng() % 50);
    if (!eb && !ec) eb = 1960;
    tl.push_back(make_timeline("D" + std::to_string(i), eb, ec));
  }
  const YearWindow w{1960, 1990};
  const auto s = annual_drug_series(tl, w);
  for (int y = w.first; y <= w.last; ++y) {
    AnnualDrugRow want;
    for (const auto& t : tl) {
      if (t.t_eb == y) ++want.first_basic;
      if (t.t_ec == y) ++want.first_clinical;
      if (t.t_eb == y && !t.t_ec) ++want.non_translated;
      if (t.t_eb && *t.t_eb <= y && !(t.t_ec && *t.t_ec <= y)) ++want.untranslated_stock;
    }
    ASSERT_EQ(s.at(y), want) << y;
  }
}

std::vector<DrugTimeline> mix(int translated, int non_translated, int clinical_only, int anomalous) {
  std::vector<DrugTimeline> tl;
  int i = 0;
  for (int k = 0; k < translated; ++k) tl.push_back(make_timeline(std::to_string(i++), 1970, 1975));
  for (int k = 0; k < non_translated; ++k) tl.push_back(make_timeline(std::to_string(i++), 1970, std::nullopt));
  for (int k = 0; k < clinical_only; ++k) tl.push_back(make_timeline(std::to_string(i++), std::nullopt, 1975));
  for (int k = 0; k < anomalous; ++k) tl.push_back(make_timeline(std::to_string(i++), 1975, 1970));
  return tl;
}

TEST(TranslationRate, Examples) {
  EXPECT_DOUBLE_EQ(translation_rate(mix(1, 4, 0, 0)), 0.2);
  EXPECT_DOUBLE_EQ(translation_rate(mix(3, 0, 0, 0)), 1.0);
  EXPECT_DOUBLE_EQ(translation_rate(mix(181, 700, 100, 19)), 0.181);
  EXPECT_THROW(translation_rate({}), DomainError);
}

TEST(TranslatedLags, ExcludeAnomalous) {
  auto tl = mix(2, 1, 1, 3);
  EXPECT_EQ(translated_lags(tl), (std::vector<int>{6, 6}));
  const auto c = status_counts(tl);
  EXPECT_EQ(c.translated, 2u);
  EXPECT_EQ(c.non_translated, 1u);
  EXPECT_EQ(c.clinical_only, 1u);
  EXPECT_EQ(c.anomalous, 3u);
}

TEST(LagStats, SmallSample) {
  const std::vector<int> lags{1, 2, 3};
  const auto s = lag_stats(lags);
  EXPECT_EQ(s.n, 3u);
  EXPECT_DOUBLE_EQ(s.mean, 2.0);
  EXPECT_DOUBLE_EQ(s.median, 2.0);
  EXPECT_DOUBLE_EQ(s.q1, 1.5);
  EXPECT_DOUBLE_EQ(s.q3, 2.5);
  EXPECT_DOUBLE_EQ(s.rate, 0.5);
  EXPECT_GE(s.ks_p, 0.0);
  EXPECT_LE(s.ks_p, 1.0);
}

TEST(LagStats, RejectsTinyOrNonPositive) {
  EXPECT_THROW(lag_stats(std::vector<int>{5}), DomainError);
  EXPECT_THROW(lag_stats(std::vector<int>{}), DomainError);
  EXPECT_THROW(lag_stats(std::vector<int>{3, 0}), DomainError);
}

TEST(LabelSet, ParseAndPrint) {
  EXPECT_EQ(LabelSet::parse("A,C,AC"), default_basic_set());
  EXPECT_EQ(LabelSet::parse(" H , AH,CH,ACH"), default_clinical_set());
  EXPECT_THROW(LabelSet::parse("A,Q"), ConfigError);
  EXPECT_EQ(default_basic_set().to_string(), "A,C,AC");
}

}  // namespace
}  // namespace translag
