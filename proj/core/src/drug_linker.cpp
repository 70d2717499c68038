#include "translag/drug_linker.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <queue>
#include <set>
#include <unordered_set>

#include "translag/error.hpp"
#include "translag/text_normalize.hpp"

namespace translag {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

}  // namespace

DrugLexicon DrugLexicon::from_entries(std::vector<DrugEntry> raw) {
  DrugLexicon lex;
  std::unordered_set<std::string> ids;
  for (auto& entry : raw) {
    if (entry.drug_id.empty()) throw DataError("lexicon entry with empty drug_id");
    if (!ids.insert(entry.drug_id).second) {
      throw DataError("duplicate drug_id '" + entry.drug_id + "' in lexicon");
    }
    DrugEntry clean{std::move(entry.drug_id), {}};
    for (const auto& form : entry.surface_forms) {
      std::string norm = normalize_text(form);
      if (code_point_count(norm) < kMinSurfaceFormLength) {
        ++lex.tally_.dropped_short_forms;
        continue;
      }
      if (std::find(clean.surface_forms.begin(), clean.surface_forms.end(), norm) ==
          clean.surface_forms.end()) {
        clean.surface_forms.push_back(std::move(norm));
      }
    }
    if (clean.surface_forms.empty()) ++lex.tally_.entries_without_forms;
    lex.entries_.push_back(std::move(clean));
  }
  lex.tally_.entries = lex.entries_.size();
  return lex;
}

DrugLexicon load_lexicon(std::istream& in) {
  std::vector<DrugEntry> raw;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (trim(line).empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw DataError("lexicon line " + std::to_string(line_no) + ": expected drug_id<TAB>forms");
    }
    DrugEntry entry;
    entry.drug_id = std::string(trim(std::string_view(line).substr(0, tab)));
    if (entry.drug_id.empty()) {
      throw DataError("lexicon line " + std::to_string(line_no) + ": empty drug_id");
    }
    std::string_view forms = std::string_view(line).substr(tab + 1);
    while (true) {
      const auto bar = forms.find('|');
      entry.surface_forms.emplace_back(forms.substr(0, bar));
      if (bar == std::string_view::npos) break;
      forms.remove_prefix(bar + 1);
    }
    raw.push_back(std::move(entry));
  }
  if (in.bad()) throw IoError("read failed while loading lexicon");
  try {
    return DrugLexicon::from_entries(std::move(raw));
  } catch (const DataError& e) {
    throw DataError(std::string("lexicon: ") + e.what());
  }
}

DrugLexicon load_lexicon(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open lexicon " + path.string());
  return load_lexicon(in);
}

std::int32_t DrugMatcher::child(std::int32_t node, std::uint8_t byte) const {
  const auto& next = nodes_[static_cast<std::size_t>(node)].next;
  auto it = std::lower_bound(next.begin(), next.end(), byte,
                             [](const auto& edge, std::uint8_t b) { return edge.first < b; });
  if (it == next.end() || it->first != byte) return -1;
  return it->second;
}

DrugMatcher::DrugMatcher(const DrugLexicon& lexicon) {
  std::map<std::string, std::set<std::string>> by_form;
  for (const auto& entry : lexicon.entries()) {
    for (const auto& form : entry.surface_forms) by_form[form].insert(entry.drug_id);
  }

  nodes_.emplace_back();
  for (auto& [form, ids] : by_form) {
    std::int32_t cur = 0;
    for (const char ch : form) {
      const auto byte = static_cast<std::uint8_t>(ch);
      std::int32_t nxt = child(cur, byte);
      if (nxt < 0) {
        nxt = static_cast<std::int32_t>(nodes_.size());
        auto& edges = nodes_[static_cast<std::size_t>(cur)].next;
        auto pos = std::lower_bound(edges.begin(), edges.end(), byte,
                                    [](const auto& e, std::uint8_t b) { return e.first < b; });
        edges.insert(pos, {byte, nxt});
        nodes_.emplace_back();
      }
      cur = nxt;
    }
    nodes_[static_cast<std::size_t>(cur)].pattern = static_cast<std::int32_t>(patterns_.size());
    patterns_.push_back(Pattern{form, std::vector<std::string>(ids.begin(), ids.end())});
  }

  // Breadth-first failure and dictionary links.
  std::queue<std::int32_t> queue;
  for (const auto& [byte, c] : nodes_[0].next) {
    nodes_[static_cast<std::size_t>(c)].fail = 0;
    queue.push(c);
  }
  while (!queue.empty()) {
    const std::int32_t u = queue.front();
    queue.pop();
    for (const auto& [byte, v] : nodes_[static_cast<std::size_t>(u)].next) {
      std::int32_t f = nodes_[static_cast<std::size_t>(u)].fail;
      std::int32_t target = child(f, byte);
      while (target < 0 && f != 0) {
        f = nodes_[static_cast<std::size_t>(f)].fail;
        target = child(f, byte);
      }
      if (target < 0 || target == v) target = 0;
      Node& node = nodes_[static_cast<std::size_t>(v)];
      node.fail = target;
      const Node& fail_node = nodes_[static_cast<std::size_t>(target)];
      node.dict = fail_node.pattern >= 0 ? target : fail_node.dict;
      queue.push(v);
    }
  }
}

std::vector<DrugMention> DrugMatcher::find(std::string_view text, Pmid pmid,
                                           TextField field) const {
  struct Candidate {
    std::size_t start;
    std::size_t length;
    std::int32_t pattern;
  };
  std::vector<Candidate> candidates;

  auto consider = [&](std::int32_t node_id, std::size_t end) {
    const Node& node = nodes_[static_cast<std::size_t>(node_id)];
    const auto& pat = patterns_[static_cast<std::size_t>(node.pattern)];
    const std::size_t start = end - pat.text.size();
    if (boundary_before(text, start) && boundary_at(text, end)) {
      candidates.push_back({start, pat.text.size(), node.pattern});
    }
  };

  std::int32_t state = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const auto byte = static_cast<std::uint8_t>(text[i]);
    std::int32_t nxt = child(state, byte);
    while (nxt < 0 && state != 0) {
      state = nodes_[static_cast<std::size_t>(state)].fail;
      nxt = child(state, byte);
    }
    state = nxt < 0 ? 0 : nxt;
    const std::size_t end = i + 1;
    if (nodes_[static_cast<std::size_t>(state)].pattern >= 0) consider(state, end);
    for (std::int32_t d = nodes_[static_cast<std::size_t>(state)].dict; d >= 0;
         d = nodes_[static_cast<std::size_t>(d)].dict) {
      consider(d, end);
    }
  }

  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    return a.start != b.start ? a.start < b.start : a.length > b.length;
  });

  std::vector<DrugMention> out;
  std::size_t covered_until = 0;
  std::size_t cp_pos = 0;   // byte position reached by the code point counter
  std::size_t cp_index = 0; // code points before cp_pos
  for (const auto& c : candidates) {
    if (c.start < covered_until) continue;
    covered_until = c.start + c.length;
    cp_index += code_point_count(text.substr(cp_pos, c.start - cp_pos));
    cp_pos = c.start;
    const auto& pat = patterns_[static_cast<std::size_t>(c.pattern)];
    for (const auto& id : pat.drug_ids) {
      out.push_back(DrugMention{pmid, id, pat.text, field, cp_index});
    }
  }
  return out;
}

std::vector<DrugMention> find_mentions(std::string_view normalized_text,
                                       const DrugMatcher& matcher) {
  return matcher.find(normalized_text);
}

std::vector<DrugPair> link_article(const ArticleRecord& article, const DrugMatcher& matcher) {
  std::set<std::string> ids;
  for (const auto& m : matcher.find(normalize_text(article.title), article.pmid, TextField::kTitle)) {
    ids.insert(m.drug_id);
  }
  for (const auto& m :
       matcher.find(normalize_text(article.abstract_text), article.pmid, TextField::kAbstract)) {
    ids.insert(m.drug_id);
  }
  std::vector<DrugPair> out;
  out.reserve(ids.size());
  for (const auto& id : ids) out.push_back(DrugPair{article.pmid, id});
  return out;
}

std::vector<DrugPair> link_corpus(std::span<const ArticleRecord> records,
                                  const DrugMatcher& matcher) {
  std::vector<DrugPair> out;
  for (const auto& r : records) {
    auto pairs = link_article(r, matcher);
    out.insert(out.end(), std::make_move_iterator(pairs.begin()),
               std::make_move_iterator(pairs.end()));
  }
  return out;
}

void write_pair(const DrugPair& pair, std::ostream& out) {
  out << pair.pmid << '\t' << pair.drug_id << '\n';
  if (!out) throw IoError("write failed while writing pairs");
}

void write_pairs(std::span<const DrugPair> pairs, std::ostream& out) {
  for (const auto& p : pairs) write_pair(p, out);
}

std::vector<DrugPair> read_pairs(std::istream& in) {
  std::vector<DrugPair> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    auto bad = [&] {
      return DataError("pair file line " + std::to_string(line_no) +
                       ": expected <pmid><TAB><drug_id>");
    };
    if (tab == std::string::npos) throw bad();
    const auto pmid_text = trim(std::string_view(line).substr(0, tab));
    DrugPair pair;
    auto [ptr, ec] = std::from_chars(pmid_text.data(), pmid_text.data() + pmid_text.size(), pair.pmid);
    if (ec != std::errc{} || ptr != pmid_text.data() + pmid_text.size() || pair.pmid <= 0) {
      throw bad();
    }
    pair.drug_id = std::string(trim(std::string_view(line).substr(tab + 1)));
    if (pair.drug_id.empty()) throw bad();
    out.push_back(std::move(pair));
  }
  if (in.bad()) throw IoError("read failed while reading pairs");
  return out;
}

}  // namespace translag
