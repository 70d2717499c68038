#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace translag {

using Pmid = std::int64_t;

inline constexpr int kMinYear = 1500;
inline constexpr int kMaxYear = 2100;

struct MeshRef {
  std::string ui;
  std::string name;

  friend bool operator==(const MeshRef&, const MeshRef&) = default;
};

/// One parsed MEDLINE citation.
struct ArticleRecord {
  Pmid pmid = 0;
  std::optional<int> year;
  std::string title;
  std::string abstract_text;
  std::optional<std::string> journal;
  std::vector<MeshRef> mesh;  // no duplicate ui

  friend bool operator==(const ArticleRecord&, const ArticleRecord&) = default;
};

inline bool is_valid_year(int year) { return year >= kMinYear && year <= kMaxYear; }

}  // namespace translag
