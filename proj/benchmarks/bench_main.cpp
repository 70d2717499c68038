#include <benchmark/benchmark.h>

#include <random>
#include <sstream>

#include "test_support.hpp"
#include "translag/classifier.hpp"
#include "translag/drug_linker.hpp"
#include "translag/mesh_index.hpp"
#include "translag/pubmed_ingest.hpp"
#include "translag/text_normalize.hpp"

namespace {

using namespace translag;

std::string synthetic_baseline(int citations) {
  std::string doc = "<?xml version=\"1.0\"?>\n<PubmedArticleSet>\n";
  for (int i = 1; i <= citations; ++i) {
    doc += "<PubmedArticle><MedlineCitation><PMID>" + std::to_string(i) +
           "</PMID><Article><Journal><JournalIssue><PubDate><Year>1990</Year></PubDate></JournalIssue>"
           "</Journal><ArticleTitle>Effects of aspirin in rats</ArticleTitle><Abstract><AbstractText>"
           "A randomized study of platelet aggregation in adult patients.</AbstractText></Abstract>"
           "</Article><MeshHeadingList><MeshHeading><DescriptorName UI=\"D051381\">Rats</DescriptorName>"
           "</MeshHeading><MeshHeading><DescriptorName UI=\"D006801\">Humans</DescriptorName>"
           "</MeshHeading></MeshHeadingList></MedlineCitation></PubmedArticle>\n";
  }
  return doc + "</PubmedArticleSet>\n";
}

void BM_IngestThroughput(benchmark::State& state) {
  const std::string doc = synthetic_baseline(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    std::istringstream in(doc);
    std::size_t n = 0;
    parse_baseline_stream(std::make_unique<StreamSource>(in), [&](ArticleRecord&&) { ++n; });
    benchmark::DoNotOptimize(n);
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * doc.size()));
}
BENCHMARK(BM_IngestThroughput)->Arg(2000);

void BM_TreeNumberCategories(benchmark::State& state) {
  testing::TreeNumberGenerator gen(1);
  std::vector<std::string> codes;
  for (int i = 0; i < 4096; ++i) codes.push_back(gen.next());
  const auto rules = CategoryRuleSet::defaults();
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(tree_number_categories(codes[i++ & 4095], rules));
  }
}
BENCHMARK(BM_TreeNumberCategories);

void BM_DrugMatcher(benchmark::State& state) {
  std::vector<DrugEntry> entries;
  std::mt19937_64 rng(2);
  for (int i = 0; i < state.range(0); ++i) {
    std::string name;
    for (int k = 0; k < 8; ++k) name.push_back(static_cast<char>('a' + rng() % 26));
    entries.push_back({"D" + std::to_string(i), {name}});
  }
  entries.push_back({"ASA", {"aspirin"}});
  const DrugMatcher matcher(DrugLexicon::from_entries(std::move(entries)));
  std::string text;
  for (int i = 0; i < 50; ++i) text += "the effect of aspirin on platelet aggregation in adults ";
  const std::string normalized = normalize_text(text);
  for (auto _ : state) benchmark::DoNotOptimize(matcher.find(normalized));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * normalized.size()));
}
BENCHMARK(BM_DrugMatcher)->Arg(1000)->Arg(20000);

void BM_TriangleCoords(benchmark::State& state) {
  std::mt19937 rng(3);
  std::vector<TermCounts> counts;
  for (int i = 0; i < 4096; ++i) counts.push_back({static_cast<std::uint32_t>(rng() % 10 + 1), static_cast<std::uint32_t>(rng() % 10),
                      static_cast<std::uint32_t>(rng() % 10)});
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(triangle_coords(counts[i++ & 4095]));
}
BENCHMARK(BM_TriangleCoords);

}  // namespace

// The packaged benchmark_main archive is LTO bytecode from another compiler
// build, so the entry point is defined here.
BENCHMARK_MAIN();
