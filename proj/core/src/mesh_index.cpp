#include "translag/mesh_index.hpp"

#include <expat.h>

#include <cstring>
#include <fstream>
#include <istream>

#include "translag/error.hpp"

namespace translag {

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

bool matches_any(std::string_view code, const std::vector<std::string>& prefixes) {
  for (const auto& p : prefixes) {
    if (is_descendant_or_equal(code, p)) return true;
  }
  return false;
}

}  // namespace

std::string CategorySet::to_string() const {
  std::string out;
  if (contains(Category::kAnimal)) out.push_back('A');
  if (contains(Category::kCell)) out.push_back('C');
  if (contains(Category::kHuman)) out.push_back('H');
  return out;
}

bool is_valid_tree_number(std::string_view code) {
  if (code.size() < 3 || !is_upper(code[0]) || !is_digit(code[1]) || !is_digit(code[2])) {
    return false;
  }
  std::size_t i = 3;
  while (i < code.size()) {
    if (code.size() - i < 4 || code[i] != '.' || !is_digit(code[i + 1]) ||
        !is_digit(code[i + 2]) || !is_digit(code[i + 3])) {
      return false;
    }
    i += 4;
  }
  return true;
}

bool is_descendant_or_equal(std::string_view code, std::string_view prefix) {
  if (!code.starts_with(prefix)) return false;
  return code.size() == prefix.size() || code[prefix.size()] == '.';
}

CategoryRuleSet CategoryRuleSet::defaults() {
  CategoryRuleSet rules;
  rules.c_prefixes = {"A11", "B02", "B03", "B04", "G02.111.570"};
  rules.h_prefixes = {std::string(kHomoSapiensTreeNumber), "M01"};
  rules.a_prefixes = {"B01"};
  rules.a_exceptions = {std::string(kHomoSapiensTreeNumber)};
  return rules;
}

void CategoryRuleSet::validate() const {
  auto check = [](const std::vector<std::string>& codes, const char* field) {
    for (const auto& c : codes) {
      if (!is_valid_tree_number(c)) {
        throw ValidationError(std::string("rule set ") + field + ": invalid tree number '" + c +
                              "'");
      }
    }
  };
  check(c_prefixes, "c_prefixes");
  check(h_prefixes, "h_prefixes");
  check(a_prefixes, "a_prefixes");
  check(a_exceptions, "a_exceptions");
  for (const auto& e : a_exceptions) {
    if (!matches_any(e, a_prefixes)) {
      throw ValidationError("rule set a_exceptions: '" + e + "' is not under any a_prefix");
    }
  }
}

CategorySet tree_number_categories(std::string_view code, const CategoryRuleSet& rules) {
  if (!is_valid_tree_number(code)) {
    throw ValidationError("invalid MeSH tree number '" + std::string(code) + "'");
  }
  CategorySet out;
  if (matches_any(code, rules.c_prefixes)) out.insert(Category::kCell);
  if (matches_any(code, rules.h_prefixes)) out.insert(Category::kHuman);
  if (matches_any(code, rules.a_prefixes) && !matches_any(code, rules.a_exceptions)) {
    out.insert(Category::kAnimal);
  }
  return out;
}

MeshIndex::MeshIndex(CategoryRuleSet rules) : rules_(std::move(rules)) { rules_.validate(); }

bool MeshIndex::insert(MeshDescriptor descriptor) {
  CategorySet cats;
  for (const auto& code : descriptor.tree_numbers) cats |= tree_number_categories(code, rules_);
  std::string key = descriptor.ui;
  auto [it, inserted] = entries_.insert_or_assign(std::move(key), Entry{std::move(descriptor), cats});
  return !inserted;
}

const MeshDescriptor* MeshIndex::find(std::string_view ui) const {
  auto it = entries_.find(ui);
  return it == entries_.end() ? nullptr : &it->second.descriptor;
}

std::optional<CategorySet> MeshIndex::categories(std::string_view ui) const {
  auto it = entries_.find(ui);
  if (it == entries_.end()) return std::nullopt;
  return it->second.categories;
}

void MeshIndex::for_each(
    const std::function<void(const MeshDescriptor&, CategorySet)>& fn) const {
  for (const auto& [ui, entry] : entries_) fn(entry.descriptor, entry.categories);
}

std::optional<CategorySet> descriptor_categories(std::string_view ui, const MeshIndex& index) {
  return index.categories(ui);
}

namespace {

void add_descriptor(MeshIndex& index, MeshDescriptor d) {
  MeshLoadTally& tally = index.tally();
  ++tally.records;
  std::vector<std::string> valid;
  valid.reserve(d.tree_numbers.size());
  for (auto& code : d.tree_numbers) {
    if (is_valid_tree_number(code)) {
      valid.push_back(std::move(code));
    } else {
      ++tally.invalid_tree_numbers;
    }
  }
  d.tree_numbers = std::move(valid);
  if (d.ui.empty() || d.tree_numbers.empty()) {
    ++tally.without_tree_numbers;
    return;
  }
  if (index.insert(std::move(d))) ++tally.duplicates;
}

void load_ascii(std::istream& in, MeshIndex& index) {
  std::optional<MeshDescriptor> current;
  std::string line;
  auto flush = [&] {
    if (current) add_descriptor(index, std::move(*current));
    current.reset();
  };
  bool first_line = true;
  while (std::getline(in, line)) {
    const auto t = trim(line);
    if (first_line && !t.empty()) {
      first_line = false;
      if (t != "*NEWRECORD") {
        throw FormatError(
            "unrecognized MeSH descriptor format: expected MeSH XML (DescriptorRecordSet) "
            "or ASCII (*NEWRECORD)");
      }
    }
    if (t == "*NEWRECORD") {
      flush();
      current.emplace();
      continue;
    }
    if (!current) continue;
    const auto eq = t.find(" = ");
    if (eq == std::string_view::npos) continue;
    const auto key = trim(t.substr(0, eq));
    const auto value = trim(t.substr(eq + 3));
    if (key == "UI") {
      current->ui = std::string(value);
    } else if (key == "MH") {
      current->name = std::string(value);
    } else if (key == "MN") {
      current->tree_numbers.emplace_back(value);
    }
  }
  if (in.bad()) throw IoError("read failed while loading MeSH descriptors");
  flush();
}

// DescriptorRecordSet/DescriptorRecord/{DescriptorUI, DescriptorName/String,
// TreeNumberList/TreeNumber}. Nested DescriptorUI elements (pharmacological
// actions, see-related lists) are ignored by requiring the direct parent.
class MeshXmlLoader {
 public:
  explicit MeshXmlLoader(MeshIndex& index) : index_(index) {
    parser_ = XML_ParserCreate("UTF-8");
    if (parser_ == nullptr) throw IoError("cannot allocate XML parser");
    XML_SetUserData(parser_, this);
    XML_SetElementHandler(parser_, &on_start, &on_end);
    XML_SetCharacterDataHandler(parser_, &on_text);
  }
  ~MeshXmlLoader() { XML_ParserFree(parser_); }
  MeshXmlLoader(const MeshXmlLoader&) = delete;
  MeshXmlLoader& operator=(const MeshXmlLoader&) = delete;

  void feed(const char* data, std::size_t len, bool final) {
    if (XML_Parse(parser_, data, static_cast<int>(len), final ? XML_TRUE : XML_FALSE) !=
        XML_STATUS_OK) {
      const auto offset = XML_GetCurrentByteIndex(parser_);
      throw ParseError(std::string("malformed MeSH XML: ") +
                           XML_ErrorString(XML_GetErrorCode(parser_)),
                       offset < 0 ? 0 : static_cast<std::uint64_t>(offset));
    }
  }

 private:
  std::string_view parent(std::size_t up) const {
    return stack_.size() > up ? std::string_view(stack_[stack_.size() - 1 - up])
                              : std::string_view();
  }

  void start(const char* name) {
    stack_.emplace_back(name);
    const std::string_view n = name;
    if (n == "DescriptorRecord" && !current_) {
      current_.emplace();
      record_depth_ = stack_.size();
      return;
    }
    if (!current_) return;
    const std::size_t d = stack_.size() - record_depth_;
    if (n == "DescriptorUI" && d == 1) {
      target_ = &current_->ui;
    } else if (n == "String" && d == 2 && parent(1) == "DescriptorName") {
      target_ = &current_->name;
    } else if (n == "TreeNumber" && d == 2 && parent(1) == "TreeNumberList") {
      current_->tree_numbers.emplace_back();
      target_ = &current_->tree_numbers.back();
    }
    if (target_ != nullptr) target_depth_ = stack_.size();
  }

  void end() {
    if (target_ != nullptr && stack_.size() == target_depth_) {
      *target_ = std::string(trim(*target_));
      target_ = nullptr;
    }
    if (current_ && stack_.size() == record_depth_ && stack_.back() == "DescriptorRecord") {
      add_descriptor(index_, std::move(*current_));
      current_.reset();
    }
    stack_.pop_back();
  }

  static void XMLCALL on_start(void* self, const XML_Char* name, const XML_Char** /*attrs*/) {
    static_cast<MeshXmlLoader*>(self)->start(name);
  }
  static void XMLCALL on_end(void* self, const XML_Char* /*name*/) {
    static_cast<MeshXmlLoader*>(self)->end();
  }
  static void XMLCALL on_text(void* self, const XML_Char* s, int len) {
    auto* me = static_cast<MeshXmlLoader*>(self);
    if (me->target_ != nullptr) me->target_->append(s, static_cast<std::size_t>(len));
  }

  MeshIndex& index_;
  XML_Parser parser_ = nullptr;
  std::vector<std::string> stack_;
  std::optional<MeshDescriptor> current_;
  std::size_t record_depth_ = 0;
  std::string* target_ = nullptr;
  std::size_t target_depth_ = 0;
};

void load_xml(std::istream& in, MeshIndex& index) {
  MeshXmlLoader loader(index);
  std::vector<char> buf(1 << 16);
  while (true) {
    in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    const auto got = static_cast<std::size_t>(in.gcount());
    if (in.bad()) throw IoError("read failed while loading MeSH descriptors");
    if (got == 0) {
      loader.feed(nullptr, 0, true);
      break;
    }
    loader.feed(buf.data(), got, false);
  }
}

}  // namespace

MeshIndex load_descriptors(std::istream& in, CategoryRuleSet rules) {
  MeshIndex index(std::move(rules));

  // UTF-8 byte order mark, then leading whitespace.
  if (in.peek() == 0xEF) {
    char bom[3];
    in.read(bom, 3);
    if (in.gcount() != 3 || static_cast<unsigned char>(bom[1]) != 0xBB ||
        static_cast<unsigned char>(bom[2]) != 0xBF) {
      throw FormatError(
          "unrecognized MeSH descriptor format: expected MeSH XML (DescriptorRecordSet) "
          "or ASCII (*NEWRECORD)");
    }
  }
  in >> std::ws;
  const int first = in.peek();
  if (first == std::char_traits<char>::eof()) return index;
  if (first == '<') {
    load_xml(in, index);
  } else if (first == '*') {
    load_ascii(in, index);
  } else {
    throw FormatError(
        "unrecognized MeSH descriptor format: expected MeSH XML (DescriptorRecordSet) "
        "or ASCII (*NEWRECORD)");
  }
  return index;
}

MeshIndex load_descriptors(const std::filesystem::path& path, CategoryRuleSet rules) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open MeSH descriptor file " + path.string());
  return load_descriptors(in, std::move(rules));
}

}  // namespace translag
