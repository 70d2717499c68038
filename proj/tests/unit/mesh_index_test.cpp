#include "translag/mesh_index.hpp"

#include <gtest/gtest.h>

#include <sstream>

#include "test_support.hpp"
#include "translag/error.hpp"

namespace translag {
namespace {

using testing::oracle_categories;

std::string cats(std::string_view code) {
  return tree_number_categories(code, CategoryRuleSet::defaults()).to_string();
}

TEST(TreeNumber, Validity) {
  EXPECT_TRUE(is_valid_tree_number("B01"));
  EXPECT_TRUE(is_valid_tree_number("G02.111.570"));
  EXPECT_FALSE(is_valid_tree_number(""));
  EXPECT_FALSE(is_valid_tree_number("B1"));
  EXPECT_FALSE(is_valid_tree_number("b01"));
  EXPECT_FALSE(is_valid_tree_number("B01."));
  EXPECT_FALSE(is_valid_tree_number("B01.05"));
  EXPECT_FALSE(is_valid_tree_number("B01..050"));
  EXPECT_FALSE(is_valid_tree_number("B01.050 "));
}

TEST(TreeNumber, SegmentBoundaryPrefix) {
  EXPECT_TRUE(is_descendant_or_equal("B01", "B01"));
  EXPECT_TRUE(is_descendant_or_equal("B01.050", "B01"));
  EXPECT_FALSE(is_descendant_or_equal("B015", "B01"));
  EXPECT_FALSE(is_descendant_or_equal("G02.111.575", "G02.111.570"));
  EXPECT_FALSE(is_descendant_or_equal("B01", "B01.050"));
}

TEST(TreeNumber, AnchorCodes) {
  EXPECT_EQ(cats("B01.050.150.900.649.313.988.400.112.400.400"), "H");
  EXPECT_EQ(cats("B01.050.150.900.649.313.992.635.505.700"), "A");
  EXPECT_EQ(cats("A11.251.210"), "C");
  EXPECT_EQ(cats("M01.060.116"), "H");
  EXPECT_EQ(cats("G02.111.570.080"), "C");
}

TEST(TreeNumber, NonMatchingCodes) {
  EXPECT_EQ(cats("C04.557"), "");
  EXPECT_EQ(cats("G02.111.575"), "");
  EXPECT_EQ(cats("B05"), "");
  EXPECT_EQ(cats("M02"), "");
}

TEST(TreeNumber, HomoSapiensDescendantIsHumanOnly) {
  EXPECT_EQ(cats(std::string(kHomoSapiensTreeNumber) + ".123"), "H");
  // Sibling of the Homo sapiens node stays animal.
  EXPECT_EQ(cats("B01.050.150.900.649.313.988.400.112.400.401"), "A");
}

TEST(TreeNumber, InvalidCodeRaises) {
  EXPECT_THROW(cats("not-a-code"), ValidationError);
  EXPECT_THROW(cats("B01.5"), ValidationError);
}

TEST(TreeNumber, AgreesWithSegmentOracle) {
  testing::TreeNumberGenerator gen(1234);
  const auto rules = CategoryRuleSet::defaults();
  for (int i = 0; i < 20000; ++i) {
    const auto code = gen.next();
    ASSERT_EQ(tree_number_categories(code, rules).to_string(), oracle_categories(code, rules)) << code;
  }
}

TEST(TreeNumber, CustomRulesAgreeWithOracle) {
  CategoryRuleSet rules{.c_prefixes = {"D02"}, .h_prefixes = {"M02.100"}, .a_prefixes = {"B05"},
                        .a_exceptions = {"B05.123"}};
  rules.validate();
  testing::TreeNumberGenerator gen(99);
  for (int i = 0; i < 5000; ++i) {
    const auto code = gen.next();
    ASSERT_EQ(tree_number_categories(code, rules).to_string(), oracle_categories(code, rules)) << code;
  }
}

TEST(CategoryRules, ValidateRejectsBadInput) {
  auto rules = CategoryRuleSet::defaults();
  EXPECT_NO_THROW(rules.validate());
  rules.c_prefixes.push_back("A1");
  EXPECT_THROW(rules.validate(), ValidationError);
  rules = CategoryRuleSet::defaults();
  rules.a_exceptions.push_back("M01.060");
  EXPECT_THROW(rules.validate(), ValidationError);
}

const char* kTwoDescriptors =
    "*NEWRECORD\nRECTYPE = D\nMH = Rats\nMN = B01.050.150.900.649.313.992.635.505.700\nUI = D051381\n\n"
    "*NEWRECORD\nRECTYPE = D\nMH = Humans\nMN = B01.050.150.900.649.313.988.400.112.400.400\n"
    "MN = M01\nUI = D006801\n";

TEST(MeshIndex, LoadsAsciiRecords) {
  std::istringstream in(kTwoDescriptors);
  const auto index = load_descriptors(in);
  EXPECT_EQ(index.size(), 2u);
  EXPECT_EQ(index.categories("D051381")->to_string(), "A");
  EXPECT_EQ(index.categories("D006801")->to_string(), "H");
  ASSERT_NE(index.find("D006801"), nullptr);
  EXPECT_EQ(index.find("D006801")->name, "Humans");
  EXPECT_EQ(index.find("D006801")->tree_numbers.size(), 2u);
}

TEST(MeshIndex, UnknownUiIsAbsent) {
  std::istringstream in(kTwoDescriptors);
  const auto index = load_descriptors(in);
  EXPECT_EQ(index.categories("D999999"), std::nullopt);
  EXPECT_EQ(descriptor_categories("D999999", index), std::nullopt);
}

TEST(MeshIndex, EmptyInputGivesEmptyIndex) {
  std::istringstream in("");
  EXPECT_TRUE(load_descriptors(in).empty());
  std::istringstream ws("  \n\n");
  EXPECT_TRUE(load_descriptors(ws).empty());
}

TEST(MeshIndex, UnknownFormatRaises) {
  std::istringstream in("UI = D1\n");
  EXPECT_THROW(load_descriptors(in), FormatError);
  std::istringstream bad_header("*RECORD\nUI = D1\n");
  EXPECT_THROW(load_descriptors(bad_header), FormatError);
}

TEST(MeshIndex, MultiCategoryDescriptorIsUnion) {
  MeshIndex index;
  index.insert({"D1", "Both", {"B01.050", "M01.060"}});
  EXPECT_EQ(index.categories("D1")->to_string(), "AH");
  index.insert({"D2", "Cell human", {"A11.100", std::string(kHomoSapiensTreeNumber) + ".001"}});
  EXPECT_EQ(index.categories("D2")->to_string(), "CH");
  index.insert({"D3", "Nothing", {"C04"}});
  ASSERT_TRUE(index.categories("D3").has_value());
  EXPECT_TRUE(index.categories("D3")->empty());
}

TEST(MeshIndex, DuplicatesAndInvalidCodesAreTallied) {
  std::istringstream in(
      "*NEWRECORD\nMH = X\nMN = B01\nUI = D1\n\n"
      "*NEWRECORD\nMH = X2\nMN = A11\nMN = bogus\nUI = D1\n\n"
      "*NEWRECORD\nMH = Y\nUI = D2\n");
  const auto index = load_descriptors(in);
  EXPECT_EQ(index.tally().records, 3u);
  EXPECT_EQ(index.tally().duplicates, 1u);
  EXPECT_EQ(index.tally().invalid_tree_numbers, 1u);
  EXPECT_EQ(index.tally().without_tree_numbers, 1u);
  EXPECT_EQ(index.find("D1")->name, "X2");
  EXPECT_EQ(index.categories("D1")->to_string(), "C");
}

TEST(MeshIndex, XmlAndAsciiFixturesAgree) {
  const auto ascii = load_descriptors(testing::corpus50_dir() / "mesh.bin");
  const auto xml = load_descriptors(testing::corpus50_dir() / "mesh.xml");
  ASSERT_EQ(ascii.size(), xml.size());
  EXPECT_EQ(ascii.size(), 15u);
  ascii.for_each([&](const MeshDescriptor& d, CategorySet c) {
    const auto* other = xml.find(d.ui);
    ASSERT_NE(other, nullptr) << d.ui;
    EXPECT_EQ(*other, d);
    EXPECT_EQ(xml.categories(d.ui), c);
  });
  // Nested DescriptorUI elements must not be taken for records.
  EXPECT_EQ(xml.find("D000000"), nullptr);
}

TEST(MeshIndex, FixtureCategoriesMatchOracle) {
  const auto index = load_descriptors(testing::corpus50_dir() / "mesh.bin");
  index.for_each([&](const MeshDescriptor& d, CategorySet c) {
    CategorySet expected;
    for (const auto& tn : d.tree_numbers) {
      for (char ch : oracle_categories(tn, index.rules())) {
        expected.insert(ch == 'A' ? Category::kAnimal : ch == 'C' ? Category::kCell : Category::kHuman);
      }
    }
    EXPECT_EQ(c, expected) << d.ui;
  });
}

}  // namespace
}  // namespace translag
