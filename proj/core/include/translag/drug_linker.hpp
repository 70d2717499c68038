#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "translag/article.hpp"

namespace translag {

inline constexpr std::size_t kMinSurfaceFormLength = 3;  // code points, after normalization

struct DrugEntry {
  std::string drug_id;
  std::vector<std::string> surface_forms;  // normalized, distinct
};

struct LexiconTally {
  std::uint64_t entries = 0;
  std::uint64_t dropped_short_forms = 0;
  std::uint64_t entries_without_forms = 0;
};

class DrugLexicon {
 public:
  /// Normalizes every form, drops forms shorter than kMinSurfaceFormLength
  /// and rejects duplicate ids with DataError.
  static DrugLexicon from_entries(std::vector<DrugEntry> raw);

  const std::vector<DrugEntry>& entries() const noexcept { return entries_; }
  const LexiconTally& tally() const noexcept { return tally_; }
  std::size_t size() const noexcept { return entries_.size(); }

 private:
  std::vector<DrugEntry> entries_;
  LexiconTally tally_;
};

/// TSV: `drug_id<TAB>form1|form2|...`; lines starting with '#' and blank
/// lines are skipped.
DrugLexicon load_lexicon(std::istream& in);
DrugLexicon load_lexicon(const std::filesystem::path& path);

enum class TextField : std::uint8_t { kTitle, kAbstract };

struct DrugMention {
  Pmid pmid = 0;
  std::string drug_id;
  std::string surface;  // matched normalized text
  TextField field = TextField::kTitle;
  std::size_t offset = 0;  // code point index into the normalized field

  friend bool operator==(const DrugMention&, const DrugMention&) = default;
};

/// Compiled multi-pattern matcher (Aho-Corasick over UTF-8 bytes).
/// Immutable once built; share freely between threads.
class DrugMatcher {
 public:
  explicit DrugMatcher(const DrugLexicon& lexicon);

  /// Scans normalized text. A candidate counts only when both neighbours
  /// are non-alphanumeric (or absent); overlapping candidates resolve
  /// leftmost-longest. Mentions come out in offset order.
  std::vector<DrugMention> find(std::string_view normalized_text, Pmid pmid = 0,
                                TextField field = TextField::kTitle) const;

  std::size_t pattern_count() const noexcept { return patterns_.size(); }

 private:
  struct Node {
    std::vector<std::pair<std::uint8_t, std::int32_t>> next;  // sorted by byte
    std::int32_t fail = 0;
    std::int32_t dict = -1;     // nearest proper suffix node that ends a pattern
    std::int32_t pattern = -1;  // pattern ending exactly here
  };
  struct Pattern {
    std::string text;
    std::vector<std::string> drug_ids;  // sorted
  };

  std::int32_t child(std::int32_t node, std::uint8_t byte) const;

  std::vector<Node> nodes_;
  std::vector<Pattern> patterns_;
};

std::vector<DrugMention> find_mentions(std::string_view normalized_text,
                                       const DrugMatcher& matcher);

struct DrugPair {
  Pmid pmid = 0;
  std::string drug_id;

  friend auto operator<=>(const DrugPair&, const DrugPair&) = default;
};

/// Distinct drugs mentioned in the title or abstract, sorted by drug_id.
std::vector<DrugPair> link_article(const ArticleRecord& article, const DrugMatcher& matcher);

/// Article order, then drug_id. Articles without mentions produce nothing.
std::vector<DrugPair> link_corpus(std::span<const ArticleRecord> records,
                                  const DrugMatcher& matcher);

/// TSV `pmid<TAB>drug_id`, one pair per line.
void write_pairs(std::span<const DrugPair> pairs, std::ostream& out);
void write_pair(const DrugPair& pair, std::ostream& out);
std::vector<DrugPair> read_pairs(std::istream& in);

}  // namespace translag
