#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace translag {

/// NFKC with Unicode case folding, whitespace runs collapsed to one ASCII
/// space, leading and trailing whitespace removed. Invalid UTF-8 sequences
/// become U+FFFD.
std::string normalize_text(std::string_view utf8);

std::size_t code_point_count(std::string_view utf8);

/// Letter or digit in the Unicode sense.
bool is_alnum_code_point(char32_t cp);

/// True when the code point ending right before `pos` (if any) is not
/// alphanumeric.
bool boundary_before(std::string_view utf8, std::size_t pos);

/// True when the code point starting at `pos` (if any) is not alphanumeric.
bool boundary_at(std::string_view utf8, std::size_t pos);

}  // namespace translag
