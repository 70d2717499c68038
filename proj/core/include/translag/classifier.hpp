#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "translag/article.hpp"
#include "translag/geometry.hpp"
#include "translag/mesh_index.hpp"

namespace translag {

/// Eight-way article type. Values are category bitmasks (A=1, C=2, H=4).
enum class ArticleLabel : std::uint8_t {
  kOther = 0,
  kA = 1,
  kC = 2,
  kAC = 3,
  kH = 4,
  kAH = 5,
  kCH = 6,
  kACH = 7,
};

/// Table and series column order.
inline constexpr std::array<ArticleLabel, 8> kAllLabels{
    ArticleLabel::kA,  ArticleLabel::kC,  ArticleLabel::kH,   ArticleLabel::kAC,
    ArticleLabel::kAH, ArticleLabel::kCH, ArticleLabel::kACH, ArticleLabel::kOther,
};

std::string_view label_name(ArticleLabel label);
std::optional<ArticleLabel> parse_label(std::string_view name);

/// Position of `label` in kAllLabels.
std::size_t label_index(ArticleLabel label);

inline bool label_has(ArticleLabel label, Category c) {
  return (static_cast<std::uint8_t>(label) & static_cast<std::uint8_t>(c)) != 0;
}

struct TermCounts {
  std::uint32_t n_a = 0;
  std::uint32_t n_c = 0;
  std::uint32_t n_h = 0;

  std::uint64_t total() const { return std::uint64_t{n_a} + n_c + n_h; }
  friend bool operator==(const TermCounts&, const TermCounts&) = default;
};

struct ArticleClassification {
  Pmid pmid = 0;
  std::optional<int> year;
  TermCounts counts;
  ArticleLabel label = ArticleLabel::kOther;
  std::optional<Point> coord;  // present iff label != kOther

  friend bool operator==(const ArticleClassification&, const ArticleClassification&) = default;
};

enum class CoordMode {
  kNormalized,  // barycentric on count fractions; always inside the triangle
  kRaw,         // unnormalized weighted sum of vertices, for comparison only
};

struct ClassifyTally {
  std::uint64_t articles = 0;
  std::uint64_t unknown_descriptors = 0;
  std::array<std::uint64_t, 8> by_label{};  // kAllLabels order
};

/// Each distinct descriptor adds one to every category it belongs to.
/// Unknown descriptors add nothing and are counted in `tally`.
TermCounts count_terms(const ArticleRecord& article, const MeshIndex& index,
                       ClassifyTally* tally = nullptr);

ArticleLabel type_label(const TermCounts& counts);

/// Maps counts onto the triangle. With f_k = n_k / (n_a + n_c + n_h):
///   x = (f_a - f_c) * sqrt(3)/2,   y = f_h - (f_a + f_c) / 2.
/// Throws DomainError when all counts are zero.
Point triangle_coords(const TermCounts& counts, CoordMode mode = CoordMode::kNormalized);

ArticleClassification classify_article(const ArticleRecord& article, const MeshIndex& index,
                                       CoordMode mode = CoordMode::kNormalized,
                                       ClassifyTally* tally = nullptr);

/// Order-preserving; one classification per record.
std::vector<ArticleClassification> classify_corpus(std::span<const ArticleRecord> records,
                                                   const MeshIndex& index,
                                                   CoordMode mode = CoordMode::kNormalized,
                                                   ClassifyTally* tally = nullptr);

}  // namespace translag
