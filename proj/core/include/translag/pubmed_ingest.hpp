#pragma once

#include <cstdint>
#include <deque>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "translag/article.hpp"
#include "translag/byte_source.hpp"

namespace translag {

/// Raw content of a <PubDate> element.
struct PubDateFields {
  std::optional<std::string> year;
  std::optional<std::string> medline_date;
};

/// Year when present and valid; otherwise the first run of exactly four
/// digits in MedlineDate that falls in [kMinYear, kMaxYear].
std::optional<int> extract_pub_year(const PubDateFields& fields);

struct IngestTally {
  std::uint64_t citations = 0;      // MedlineCitation elements seen
  std::uint64_t skipped_no_pmid = 0;
  std::uint64_t bytes = 0;          // decoded bytes consumed
};

/// Pull-style streaming reader over a PubMed baseline document.
///
/// Records come out in document order, one per MedlineCitation. The
/// reader buffers at most one citation plus one input chunk, so memory
/// does not grow with the document. Malformed XML raises ParseError with
/// the decoded byte offset.
///
/// Title and abstract keep the text of inline markup (<i>, <sup>, ...).
/// Multiple AbstractText sections are joined with a single space; their
/// Label attributes are dropped. Only DescriptorName is read from each
/// MeshHeading, and repeated descriptor UIs are kept once.
class CitationReader {
 public:
  explicit CitationReader(std::unique_ptr<ByteSource> source);
  ~CitationReader();
  CitationReader(const CitationReader&) = delete;
  CitationReader& operator=(const CitationReader&) = delete;
  CitationReader(CitationReader&&) noexcept;
  CitationReader& operator=(CitationReader&&) noexcept;

  static CitationReader open(const std::filesystem::path& path,
                             Compression compression = Compression::kAuto);

  std::optional<ArticleRecord> next();

  /// Final once next() has returned nullopt.
  const IngestTally& tally() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Convenience driver: feeds every record to `sink` and returns the tally.
IngestTally parse_baseline_stream(std::unique_ptr<ByteSource> source,
                                  const std::function<void(ArticleRecord&&)>& sink);

}  // namespace translag
