#include "translag/pubmed_ingest.hpp"

#include <expat.h>

#include <array>
#include <charconv>
#include <cstring>
#include <unordered_set>
#include <vector>

#include "translag/error.hpp"

namespace translag {

namespace {

constexpr std::size_t kChunkSize = 1 << 16;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

enum class Tag : std::uint8_t {
  kOther,
  kMedlineCitation,
  kPmid,
  kArticle,
  kArticleTitle,
  kAbstract,
  kAbstractText,
  kJournal,
  kJournalTitle,  // <Title> anywhere; disambiguated by parent
  kJournalIssue,
  kPubDate,
  kYear,
  kMedlineDate,
  kMeshHeadingList,
  kMeshHeading,
  kDescriptorName,
};

Tag classify_tag(const char* name) {
  struct Entry {
    const char* name;
    Tag tag;
  };
  static constexpr std::array<Entry, 15> kTable{{
      {"MedlineCitation", Tag::kMedlineCitation},
      {"PMID", Tag::kPmid},
      {"Article", Tag::kArticle},
      {"ArticleTitle", Tag::kArticleTitle},
      {"Abstract", Tag::kAbstract},
      {"AbstractText", Tag::kAbstractText},
      {"Journal", Tag::kJournal},
      {"Title", Tag::kJournalTitle},
      {"JournalIssue", Tag::kJournalIssue},
      {"PubDate", Tag::kPubDate},
      {"Year", Tag::kYear},
      {"MedlineDate", Tag::kMedlineDate},
      {"MeshHeadingList", Tag::kMeshHeadingList},
      {"MeshHeading", Tag::kMeshHeading},
      {"DescriptorName", Tag::kDescriptorName},
  }};
  for (const auto& e : kTable) {
    if (std::strcmp(name, e.name) == 0) return e.tag;
  }
  return Tag::kOther;
}

}  // namespace

std::optional<int> extract_pub_year(const PubDateFields& fields) {
  auto parse4 = [](std::string_view digits) -> std::optional<int> {
    int value = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc{} || ptr != digits.data() + digits.size()) return std::nullopt;
    if (!is_valid_year(value)) return std::nullopt;
    return value;
  };

  if (fields.year) {
    const auto y = trim(*fields.year);
    if (y.size() == 4) {
      if (auto v = parse4(y)) return v;
    }
  }
  if (fields.medline_date) {
    const std::string_view s = *fields.medline_date;
    std::size_t i = 0;
    while (i < s.size()) {
      if (s[i] < '0' || s[i] > '9') {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < s.size() && s[j] >= '0' && s[j] <= '9') ++j;
      if (j - i == 4) {
        if (auto v = parse4(s.substr(i, 4))) return v;
      }
      i = j;
    }
  }
  return std::nullopt;
}

struct CitationReader::Impl {
  std::unique_ptr<ByteSource> source;
  XML_Parser parser = nullptr;
  std::vector<char> chunk = std::vector<char>(kChunkSize);
  std::deque<ArticleRecord> ready;
  IngestTally tally;
  bool eof = false;

  std::vector<Tag> stack;
  // Citation under construction.
  bool in_citation = false;
  std::size_t citation_depth = 0;
  ArticleRecord current;
  std::optional<std::string> pmid_text;
  std::vector<std::string> abstract_parts;
  PubDateFields pubdate;
  std::unordered_set<std::string> seen_ui;
  std::string pending_ui;

  // Active text capture: every character inside the element at
  // capture_depth (including nested markup) lands in *capture.
  std::string* capture = nullptr;
  std::size_t capture_depth = 0;
  std::string scratch;

  explicit Impl(std::unique_ptr<ByteSource> src) : source(std::move(src)) {
    parser = XML_ParserCreate("UTF-8");
    if (parser == nullptr) throw IoError("cannot allocate XML parser");
    XML_SetUserData(parser, this);
    XML_SetElementHandler(parser, &Impl::on_start, &Impl::on_end);
    XML_SetCharacterDataHandler(parser, &Impl::on_text);
  }

  ~Impl() {
    if (parser != nullptr) XML_ParserFree(parser);
  }

  // Relative position helpers: tag at `depth_from_top` (0 = current).
  Tag parent(std::size_t up) const {
    return stack.size() > up ? stack[stack.size() - 1 - up] : Tag::kOther;
  }
  std::size_t rel_depth() const { return stack.size() - citation_depth; }

  void begin_capture(std::string* target) {
    capture = target;
    capture_depth = stack.size();
  }

  void start(const char* name, const char** attrs) {
    const Tag tag = classify_tag(name);
    stack.push_back(tag);
    if (capture != nullptr) return;

    if (tag == Tag::kMedlineCitation && !in_citation) {
      in_citation = true;
      citation_depth = stack.size();
      current = ArticleRecord{};
      pmid_text.reset();
      abstract_parts.clear();
      pubdate = PubDateFields{};
      seen_ui.clear();
      ++tally.citations;
      return;
    }
    if (!in_citation) return;

    // Depths below are relative to MedlineCitation (depth 1).
    const std::size_t d = rel_depth();
    switch (tag) {
      case Tag::kPmid:
        if (d == 1) {
          pmid_text.emplace();
          begin_capture(&*pmid_text);
        }
        break;
      case Tag::kArticleTitle:
        if (d == 2 && parent(1) == Tag::kArticle) begin_capture(&current.title);
        break;
      case Tag::kAbstractText:
        if (d == 3 && parent(1) == Tag::kAbstract && parent(2) == Tag::kArticle) {
          abstract_parts.emplace_back();
          begin_capture(&abstract_parts.back());
        }
        break;
      case Tag::kJournalTitle:
        if (d == 3 && parent(1) == Tag::kJournal && parent(2) == Tag::kArticle) {
          current.journal.emplace();
          begin_capture(&*current.journal);
        }
        break;
      case Tag::kYear:
        if (d == 5 && parent(1) == Tag::kPubDate && parent(2) == Tag::kJournalIssue) {
          pubdate.year.emplace();
          begin_capture(&*pubdate.year);
        }
        break;
      case Tag::kMedlineDate:
        if (d == 5 && parent(1) == Tag::kPubDate && parent(2) == Tag::kJournalIssue) {
          pubdate.medline_date.emplace();
          begin_capture(&*pubdate.medline_date);
        }
        break;
      case Tag::kDescriptorName:
        if (d == 3 && parent(1) == Tag::kMeshHeading && parent(2) == Tag::kMeshHeadingList) {
          pending_ui.clear();
          for (const char** a = attrs; a != nullptr && *a != nullptr; a += 2) {
            if (std::strcmp(a[0], "UI") == 0) pending_ui = a[1];
          }
          scratch.clear();
          begin_capture(&scratch);
        }
        break;
      default:
        break;
    }
  }

  void end() {
    const Tag tag = stack.back();
    if (capture != nullptr && stack.size() == capture_depth) {
      capture = nullptr;
      if (tag == Tag::kDescriptorName && in_citation) finish_descriptor();
    }
    if (in_citation && tag == Tag::kMedlineCitation && stack.size() == citation_depth) {
      finish_citation();
    }
    stack.pop_back();
  }

  void finish_descriptor() {
    const std::string ui{trim(pending_ui)};
    if (ui.empty()) return;
    if (!seen_ui.insert(ui).second) return;
    current.mesh.push_back(MeshRef{ui, std::string(trim(scratch))});
  }

  void finish_citation() {
    in_citation = false;
    Pmid pmid = 0;
    bool ok = false;
    if (pmid_text) {
      const auto t = trim(*pmid_text);
      auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), pmid);
      ok = ec == std::errc{} && ptr == t.data() + t.size() && pmid > 0;
    }
    if (!ok) {
      ++tally.skipped_no_pmid;
      return;
    }
    current.pmid = pmid;
    current.title = std::string(trim(current.title));
    if (current.journal) {
      current.journal = std::string(trim(*current.journal));
      if (current.journal->empty()) current.journal.reset();
    }
    std::string joined;
    for (const auto& part : abstract_parts) {
      const auto t = trim(part);
      if (t.empty()) continue;
      if (!joined.empty()) joined.push_back(' ');
      joined.append(t);
    }
    current.abstract_text = std::move(joined);
    current.year = extract_pub_year(pubdate);
    ready.push_back(std::move(current));
    current = ArticleRecord{};
  }

  void text(const char* s, int len) {
    if (capture != nullptr) capture->append(s, static_cast<std::size_t>(len));
  }

  static void XMLCALL on_start(void* self, const XML_Char* name, const XML_Char** attrs) {
    static_cast<Impl*>(self)->start(name, attrs);
  }
  static void XMLCALL on_end(void* self, const XML_Char* /*name*/) {
    static_cast<Impl*>(self)->end();
  }
  static void XMLCALL on_text(void* self, const XML_Char* s, int len) {
    static_cast<Impl*>(self)->text(s, len);
  }

  [[noreturn]] void fail() {
    const auto offset = XML_GetCurrentByteIndex(parser);
    throw ParseError(std::string("malformed XML: ") + XML_ErrorString(XML_GetErrorCode(parser)),
                     offset < 0 ? tally.bytes : static_cast<std::uint64_t>(offset));
  }

  void pump() {
    const std::size_t got = source->read(chunk);
    tally.bytes += got;
    if (got == 0) {
      eof = true;
      if (XML_Parse(parser, nullptr, 0, XML_TRUE) != XML_STATUS_OK) fail();
      return;
    }
    if (XML_Parse(parser, chunk.data(), static_cast<int>(got), XML_FALSE) != XML_STATUS_OK) {
      fail();
    }
  }
};

CitationReader::CitationReader(std::unique_ptr<ByteSource> source)
    : impl_(std::make_unique<Impl>(std::move(source))) {}

CitationReader::~CitationReader() = default;
CitationReader::CitationReader(CitationReader&&) noexcept = default;
CitationReader& CitationReader::operator=(CitationReader&&) noexcept = default;

CitationReader CitationReader::open(const std::filesystem::path& path, Compression compression) {
  return CitationReader(open_source(path, compression));
}

std::optional<ArticleRecord> CitationReader::next() {
  while (impl_->ready.empty() && !impl_->eof) impl_->pump();
  if (impl_->ready.empty()) return std::nullopt;
  ArticleRecord out = std::move(impl_->ready.front());
  impl_->ready.pop_front();
  return out;
}

const IngestTally& CitationReader::tally() const { return impl_->tally; }

IngestTally parse_baseline_stream(std::unique_ptr<ByteSource> source,
                                  const std::function<void(ArticleRecord&&)>& sink) {
  CitationReader reader(std::move(source));
  while (auto record = reader.next()) sink(std::move(*record));
  return reader.tally();
}

}  // namespace translag
