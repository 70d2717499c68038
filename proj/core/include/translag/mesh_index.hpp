#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace translag {

enum class Category : std::uint8_t { kAnimal = 1, kCell = 2, kHuman = 4 };

/// Subset of {A, C, H}.
class CategorySet {
 public:
  constexpr CategorySet() = default;
  constexpr CategorySet(std::initializer_list<Category> cats) {
    for (auto c : cats) insert(c);
  }

  static constexpr CategorySet from_bits(std::uint8_t bits) {
    CategorySet s;
    s.bits_ = bits & 0x7;
    return s;
  }

  constexpr void insert(Category c) { bits_ |= static_cast<std::uint8_t>(c); }
  constexpr bool contains(Category c) const { return (bits_ & static_cast<std::uint8_t>(c)) != 0; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::uint8_t bits() const { return bits_; }

  constexpr CategorySet& operator|=(CategorySet other) {
    bits_ |= other.bits_;
    return *this;
  }
  friend constexpr CategorySet operator|(CategorySet a, CategorySet b) { return a |= b; }
  friend constexpr bool operator==(CategorySet, CategorySet) = default;

  /// Letters in canonical order, e.g. "AH"; "" when empty.
  std::string to_string() const;

 private:
  std::uint8_t bits_ = 0;
};

/// One letter, two digits, then zero or more ".ddd" segments.
bool is_valid_tree_number(std::string_view code);

/// True when `code` equals `prefix` or continues it past a '.' boundary:
/// "B01.050" is under "B01", "B015" is not.
bool is_descendant_or_equal(std::string_view code, std::string_view prefix);

/// Subtree rules that sort MeSH codes into animal, cell/molecule and human.
struct CategoryRuleSet {
  std::vector<std::string> c_prefixes;
  std::vector<std::string> h_prefixes;
  std::vector<std::string> a_prefixes;
  std::vector<std::string> a_exceptions;

  /// C: A11, B02, B03, B04, G02.111.570. H: the Homo sapiens node and M01.
  /// A: B01 minus the Homo sapiens node.
  static CategoryRuleSet defaults();

  /// Throws ValidationError on malformed codes or an exception that lies
  /// outside every A prefix.
  void validate() const;

  friend bool operator==(const CategoryRuleSet&, const CategoryRuleSet&) = default;
};

inline constexpr std::string_view kHomoSapiensTreeNumber =
    "B01.050.150.900.649.313.988.400.112.400.400";

/// Throws ValidationError for a syntactically invalid code.
CategorySet tree_number_categories(std::string_view code, const CategoryRuleSet& rules);

struct MeshDescriptor {
  std::string ui;
  std::string name;
  std::vector<std::string> tree_numbers;

  friend bool operator==(const MeshDescriptor&, const MeshDescriptor&) = default;
};

struct MeshLoadTally {
  std::uint64_t records = 0;
  std::uint64_t duplicates = 0;           // later record replaced an earlier one
  std::uint64_t without_tree_numbers = 0; // not indexed
  std::uint64_t invalid_tree_numbers = 0; // dropped codes
};

/// Immutable after load; category sets are computed once per descriptor.
class MeshIndex {
 public:
  explicit MeshIndex(CategoryRuleSet rules = CategoryRuleSet::defaults());

  /// Indexes `descriptor`, replacing any earlier entry with the same ui.
  /// Returns true when an entry was replaced.
  bool insert(MeshDescriptor descriptor);

  const MeshDescriptor* find(std::string_view ui) const;

  /// nullopt for an unknown ui; a known descriptor may map to an empty set.
  std::optional<CategorySet> categories(std::string_view ui) const;

  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  const CategoryRuleSet& rules() const noexcept { return rules_; }

  MeshLoadTally& tally() noexcept { return tally_; }
  const MeshLoadTally& tally() const noexcept { return tally_; }

  void for_each(const std::function<void(const MeshDescriptor&, CategorySet)>& fn) const;

 private:
  struct Entry {
    MeshDescriptor descriptor;
    CategorySet categories;
  };
  CategoryRuleSet rules_;
  std::map<std::string, Entry, std::less<>> entries_;
  MeshLoadTally tally_;
};

std::optional<CategorySet> descriptor_categories(std::string_view ui, const MeshIndex& index);

/// Accepts MeSH descriptor XML (DescriptorRecordSet) or the ASCII
/// "*NEWRECORD" format, detected from the leading bytes. An empty input
/// yields an empty index.
MeshIndex load_descriptors(std::istream& in,
                           CategoryRuleSet rules = CategoryRuleSet::defaults());
MeshIndex load_descriptors(const std::filesystem::path& path,
                           CategoryRuleSet rules = CategoryRuleSet::defaults());

}  // namespace translag
