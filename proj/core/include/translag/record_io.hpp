#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "translag/article.hpp"
#include "translag/classifier.hpp"

namespace translag {

// Line-delimited JSON, one object per line, UTF-8.
//
//   article:        {"pmid","year","title","abstract","journal","mesh":[{"ui","name"}]}
//   classification: {"pmid","year","n_a","n_c","n_h","label","x","y"}
//
// Keys are written in exactly this order. Absent values are null.

std::string to_json_line(const ArticleRecord& record);
std::string to_json_line(const ArticleClassification& classification);

ArticleRecord parse_article_line(std::string_view line);
ArticleClassification parse_classification_line(std::string_view line);

/// Appends one line per item. A failed write raises IoError carrying the
/// number of records fully written before the failure.
template <typename Record>
class LineWriter {
 public:
  explicit LineWriter(std::ostream& out) : out_(out) {}

  void write(const Record& record);
  std::uint64_t count() const noexcept { return count_; }

 private:
  std::ostream& out_;
  std::uint64_t count_ = 0;
};

/// Reads line records; blank lines are ignored. Malformed lines raise
/// DataError naming the 1-based line number.
template <typename Record>
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  std::optional<Record> next();
  std::uint64_t line_number() const noexcept { return line_; }

 private:
  std::istream& in_;
  std::string buffer_;
  std::uint64_t line_ = 0;
};

using RecordWriter = LineWriter<ArticleRecord>;
using RecordReader = LineReader<ArticleRecord>;
using ClassificationWriter = LineWriter<ArticleClassification>;
using ClassificationReader = LineReader<ArticleClassification>;

std::uint64_t write_records(std::span<const ArticleRecord> records, std::ostream& out);
std::vector<ArticleRecord> read_records(std::istream& in);

std::uint64_t write_classifications(std::span<const ArticleClassification> items,
                                    std::ostream& out);
std::vector<ArticleClassification> read_classifications(std::istream& in);

extern template class LineWriter<ArticleRecord>;
extern template class LineWriter<ArticleClassification>;
extern template class LineReader<ArticleRecord>;
extern template class LineReader<ArticleClassification>;

}  // namespace translag
