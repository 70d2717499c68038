#pragma once

#include <expat.h>
#include <zlib.h>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "translag/mesh_index.hpp"

namespace translag::testing {

inline std::filesystem::path fixture_dir() { return TRANSLAG_FIXTURE_DIR; }
inline std::filesystem::path corpus50_dir() { return fixture_dir() / "corpus50"; }

/// Fresh empty directory under the system temp dir.
inline std::filesystem::path make_temp_dir(std::string_view tag) {
  static std::mt19937_64 rng(std::random_device{}());
  auto dir = std::filesystem::temp_directory_path() /
             ("translag-" + std::string(tag) + "-" + std::to_string(rng()));
  std::filesystem::create_directories(dir);
  return dir;
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::filesystem::path& p, std::string_view content) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

inline std::string gzip_bytes(std::string_view plain) {
  z_stream zs{};
  deflateInit2(&zs, Z_DEFAULT_COMPRESSION, Z_DEFLATED, 15 + 16, 8, Z_DEFAULT_STRATEGY);
  std::string out(deflateBound(&zs, static_cast<uLong>(plain.size())) + 64, '\0');
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(plain.data()));
  zs.avail_in = static_cast<uInt>(plain.size());
  zs.next_out = reinterpret_cast<Bytef*>(out.data());
  zs.avail_out = static_cast<uInt>(out.size());
  deflate(&zs, Z_FINISH);
  out.resize(zs.total_out);
  deflateEnd(&zs);
  return out;
}

/// Well-formedness check with an independent expat pass.
inline bool is_well_formed_xml(std::string_view doc) {
  XML_Parser p = XML_ParserCreate("UTF-8");
  const bool ok = XML_Parse(p, doc.data(), static_cast<int>(doc.size()), XML_TRUE) == XML_STATUS_OK;
  XML_ParserFree(p);
  return ok;
}

inline std::size_t count_occurrences(std::string_view haystack, std::string_view needle) {
  std::size_t n = 0;
  for (auto pos = haystack.find(needle); pos != std::string_view::npos;
       pos = haystack.find(needle, pos + 1)) {
    ++n;
  }
  return n;
}

// --- MeSH rule oracle -------------------------------------------------------
// Splits codes into segment lists and compares element-wise; shares no code
// with the production matcher.

inline std::vector<std::string> split_segments(std::string_view code) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : code) {
    if (ch == '.') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

inline bool oracle_under(std::string_view code, std::string_view prefix) {
  const auto c = split_segments(code);
  const auto p = split_segments(prefix);
  if (c.size() < p.size()) return false;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (c[i] != p[i]) return false;
  }
  return true;
}

inline std::string oracle_categories(std::string_view code, const CategoryRuleSet& rules) {
  auto any = [&](const std::vector<std::string>& ps) {
    for (const auto& p : ps) {
      if (oracle_under(code, p)) return true;
    }
    return false;
  };
  std::string out;
  if (any(rules.a_prefixes) && !any(rules.a_exceptions)) out += 'A';
  if (any(rules.c_prefixes)) out += 'C';
  if (any(rules.h_prefixes)) out += 'H';
  return out;
}

/// Random syntactically valid tree numbers, biased toward the rule
/// prefixes so that every branch of the rules is exercised.
class TreeNumberGenerator {
 public:
  explicit TreeNumberGenerator(std::uint64_t seed) : rng_(seed) {}

  std::string next() {
    static const std::vector<std::string> kStems{
        "A11", "A10", "B01", "B02", "B03", "B04", "B05", "G02", "G02.111", "G02.111.570",
        "G02.111.575", "M01", "M02", "C04", "D02", std::string(kHomoSapiensTreeNumber),
        "B01.050.150.900.649.313.988.400.112.400", "B01.050.150.900.649.313.988.400.112.400.401"};
    std::string code;
    if (pick(4) == 0) {
      code.push_back(static_cast<char>('A' + pick(26)));
      code += digits(2);
    } else {
      code = kStems[pick(kStems.size())];
    }
    const std::size_t extra = pick(5);
    for (std::size_t i = 0; i < extra; ++i) code += "." + digits(3);
    return code;
  }

 private:
  std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
  std::string digits(int n) {
    std::string s;
    for (int i = 0; i < n; ++i) s.push_back(static_cast<char>('0' + pick(10)));
    return s;
  }
  std::mt19937_64 rng_;
};

/// Inverse-transform exponential draws from a 64-bit Mersenne Twister, so
/// the sample stream does not depend on the standard library's
/// distribution implementation.
class ExponentialDraws {
 public:
  ExponentialDraws(double mean, std::uint64_t seed) : mean_(mean), rng_(seed) {}

  double next() {
    const double u = static_cast<double>(rng_() >> 11) * 0x1.0p-53;  // [0, 1)
    return -mean_ * std::log1p(-u);
  }

  /// Rounded to the nearest integer, at least 1.
  int next_lag() {
    const auto v = static_cast<long long>(std::llround(next()));
    return static_cast<int>(v < 1 ? 1 : v);
  }

 private:
  double mean_;
  std::mt19937_64 rng_;
};

}  // namespace translag::testing
