#include "translag/classifier.hpp"

#include <algorithm>
#include <string>

#include "translag/error.hpp"

namespace translag {

std::string_view label_name(ArticleLabel label) {
  switch (label) {
    case ArticleLabel::kA: return "A";
    case ArticleLabel::kC: return "C";
    case ArticleLabel::kAC: return "AC";
    case ArticleLabel::kH: return "H";
    case ArticleLabel::kAH: return "AH";
    case ArticleLabel::kCH: return "CH";
    case ArticleLabel::kACH: return "ACH";
    case ArticleLabel::kOther: break;
  }
  return "Other";
}

std::optional<ArticleLabel> parse_label(std::string_view name) {
  for (auto label : kAllLabels) {
    if (label_name(label) == name) return label;
  }
  return std::nullopt;
}

std::size_t label_index(ArticleLabel label) {
  const auto it = std::find(kAllLabels.begin(), kAllLabels.end(), label);
  return static_cast<std::size_t>(it - kAllLabels.begin());
}

TermCounts count_terms(const ArticleRecord& article, const MeshIndex& index,
                       ClassifyTally* tally) {
  TermCounts counts;
  // Records are deduplicated at ingest, but hand-built ones may not be.
  std::vector<std::string_view> seen;
  seen.reserve(article.mesh.size());
  for (const auto& ref : article.mesh) {
    if (std::find(seen.begin(), seen.end(), ref.ui) != seen.end()) continue;
    seen.push_back(ref.ui);
    const auto cats = index.categories(ref.ui);
    if (!cats) {
      if (tally != nullptr) ++tally->unknown_descriptors;
      continue;
    }
    if (cats->contains(Category::kAnimal)) ++counts.n_a;
    if (cats->contains(Category::kCell)) ++counts.n_c;
    if (cats->contains(Category::kHuman)) ++counts.n_h;
  }
  return counts;
}

ArticleLabel type_label(const TermCounts& counts) {
  std::uint8_t bits = 0;
  if (counts.n_a > 0) bits |= 1;
  if (counts.n_c > 0) bits |= 2;
  if (counts.n_h > 0) bits |= 4;
  return static_cast<ArticleLabel>(bits);
}

Point triangle_coords(const TermCounts& counts, CoordMode mode) {
  const std::uint64_t total = counts.total();
  if (total == 0) throw DomainError("triangle coordinates undefined for an article with no A/C/H terms");

  const auto a = static_cast<double>(counts.n_a);
  const auto c = static_cast<double>(counts.n_c);
  const auto h = static_cast<double>(counts.n_h);
  if (mode == CoordMode::kRaw) {
    return {a * kHalfSqrt3 - c * kHalfSqrt3, -0.5 * a - 0.5 * c + h};
  }
  // Integer numerators over a single division keep the result identical
  // for (k*n_a, k*n_c, k*n_h).
  const auto n = static_cast<double>(total);
  const double x = (a - c) / n * kHalfSqrt3;
  const double y = (2.0 * h - a - c) / (2.0 * n);
  return {x, y};
}

ArticleClassification classify_article(const ArticleRecord& article, const MeshIndex& index,
                                       CoordMode mode, ClassifyTally* tally) {
  ArticleClassification out;
  out.pmid = article.pmid;
  out.year = article.year;
  out.counts = count_terms(article, index, tally);
  out.label = type_label(out.counts);
  if (out.label != ArticleLabel::kOther) out.coord = triangle_coords(out.counts, mode);
  if (tally != nullptr) {
    ++tally->articles;
    ++tally->by_label[label_index(out.label)];
  }
  return out;
}

std::vector<ArticleClassification> classify_corpus(std::span<const ArticleRecord> records,
                                                   const MeshIndex& index, CoordMode mode,
                                                   ClassifyTally* tally) {
  std::vector<ArticleClassification> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(classify_article(r, index, mode, tally));
  return out;
}

}  // namespace translag
