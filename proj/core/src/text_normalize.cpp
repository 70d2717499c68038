#include "translag/text_normalize.hpp"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include "translag/error.hpp"

namespace translag {

namespace {

const icu::Normalizer2& nfkc_casefold() {
  static const icu::Normalizer2* instance = [] {
    UErrorCode status = U_ZERO_ERROR;
    const icu::Normalizer2* n = icu::Normalizer2::getNFKCCasefoldInstance(status);
    if (U_FAILURE(status) || n == nullptr) {
      throw Error(std::string("ICU NFKC_Casefold unavailable: ") + u_errorName(status));
    }
    return n;
  }();
  return *instance;
}

}  // namespace

std::string normalize_text(std::string_view utf8) {
  const icu::UnicodeString source = icu::UnicodeString::fromUTF8(
      icu::StringPiece(utf8.data(), static_cast<int32_t>(utf8.size())));
  UErrorCode status = U_ZERO_ERROR;
  const icu::UnicodeString folded = nfkc_casefold().normalize(source, status);
  if (U_FAILURE(status)) throw DataError(std::string("normalization failed: ") + u_errorName(status));

  std::string normalized;
  folded.toUTF8String(normalized);

  std::string out;
  out.reserve(normalized.size());
  bool pending_space = false;
  std::int32_t i = 0;
  const auto len = static_cast<std::int32_t>(normalized.size());
  const auto* bytes = reinterpret_cast<const std::uint8_t*>(normalized.data());
  while (i < len) {
    const std::int32_t start = i;
    UChar32 cp = 0;
    U8_NEXT(bytes, i, len, cp);
    if (cp >= 0 && u_isUWhiteSpace(cp)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    out.append(normalized, static_cast<std::size_t>(start), static_cast<std::size_t>(i - start));
  }
  return out;
}

std::size_t code_point_count(std::string_view utf8) {
  std::size_t n = 0;
  for (const char ch : utf8) {
    if ((static_cast<unsigned char>(ch) & 0xC0) != 0x80) ++n;
  }
  return n;
}

bool is_alnum_code_point(char32_t cp) { return u_isalnum(static_cast<UChar32>(cp)) != 0; }

bool boundary_before(std::string_view utf8, std::size_t pos) {
  if (pos == 0) return true;
  const auto* bytes = reinterpret_cast<const std::uint8_t*>(utf8.data());
  auto i = static_cast<std::int32_t>(pos);
  UChar32 cp = 0;
  U8_PREV(bytes, 0, i, cp);
  return cp < 0 || !u_isalnum(cp);
}

bool boundary_at(std::string_view utf8, std::size_t pos) {
  if (pos >= utf8.size()) return true;
  const auto* bytes = reinterpret_cast<const std::uint8_t*>(utf8.data());
  auto i = static_cast<std::int32_t>(pos);
  UChar32 cp = 0;
  U8_NEXT(bytes, i, static_cast<std::int32_t>(utf8.size()), cp);
  return cp < 0 || !u_isalnum(cp);
}

}  // namespace translag
