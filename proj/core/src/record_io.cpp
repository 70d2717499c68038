#include "translag/record_io.hpp"

#include <istream>
#include <ostream>

#include <json.hpp>

#include "translag/error.hpp"

namespace translag {

using Json = nlohmann::ordered_json;

namespace {

std::string dump(const Json& j) {
  return j.dump(-1, ' ', false, Json::error_handler_t::replace);
}

template <typename T>
Json optional_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

Json parse_object(std::string_view line) {
  Json j = Json::parse(line.begin(), line.end());
  if (!j.is_object()) throw DataError("expected a JSON object");
  return j;
}

}  // namespace

std::string to_json_line(const ArticleRecord& record) {
  Json j;
  j["pmid"] = record.pmid;
  j["year"] = optional_json(record.year);
  j["title"] = record.title;
  j["abstract"] = record.abstract_text;
  j["journal"] = optional_json(record.journal);
  Json mesh = Json::array();
  for (const auto& m : record.mesh) {
    Json ref;
    ref["ui"] = m.ui;
    ref["name"] = m.name;
    mesh.push_back(std::move(ref));
  }
  j["mesh"] = std::move(mesh);
  return dump(j);
}

std::string to_json_line(const ArticleClassification& c) {
  Json j;
  j["pmid"] = c.pmid;
  j["year"] = optional_json(c.year);
  j["n_a"] = c.counts.n_a;
  j["n_c"] = c.counts.n_c;
  j["n_h"] = c.counts.n_h;
  j["label"] = std::string(label_name(c.label));
  j["x"] = c.coord ? Json(c.coord->x) : Json(nullptr);
  j["y"] = c.coord ? Json(c.coord->y) : Json(nullptr);
  return dump(j);
}

ArticleRecord parse_article_line(std::string_view line) {
  const Json j = parse_object(line);
  ArticleRecord r;
  r.pmid = j.at("pmid").get<Pmid>();
  if (r.pmid <= 0) throw DataError("pmid must be positive");
  if (const auto& y = j.at("year"); !y.is_null()) r.year = y.get<int>();
  r.title = j.at("title").get<std::string>();
  r.abstract_text = j.at("abstract").get<std::string>();
  if (const auto& jr = j.at("journal"); !jr.is_null()) r.journal = jr.get<std::string>();
  for (const auto& m : j.at("mesh")) {
    r.mesh.push_back(MeshRef{m.at("ui").get<std::string>(), m.at("name").get<std::string>()});
  }
  return r;
}

ArticleClassification parse_classification_line(std::string_view line) {
  const Json j = parse_object(line);
  ArticleClassification c;
  c.pmid = j.at("pmid").get<Pmid>();
  if (const auto& y = j.at("year"); !y.is_null()) c.year = y.get<int>();
  c.counts.n_a = j.at("n_a").get<std::uint32_t>();
  c.counts.n_c = j.at("n_c").get<std::uint32_t>();
  c.counts.n_h = j.at("n_h").get<std::uint32_t>();
  const auto name = j.at("label").get<std::string>();
  const auto label = parse_label(name);
  if (!label) throw DataError("unknown article label '" + name + "'");
  c.label = *label;
  const auto& x = j.at("x");
  const auto& y = j.at("y");
  if (x.is_null() != y.is_null()) throw DataError("x and y must both be null or both numbers");
  if (!x.is_null()) c.coord = Point{x.get<double>(), y.get<double>()};
  return c;
}

template <typename Record>
void LineWriter<Record>::write(const Record& record) {
  const std::string line = to_json_line(record);
  out_.write(line.data(), static_cast<std::streamsize>(line.size()));
  out_.put('\n');
  if (!out_) throw IoError("write failed", count_);
  ++count_;
}

template <typename Record>
std::optional<Record> LineReader<Record>::next() {
  while (std::getline(in_, buffer_)) {
    ++line_;
    if (!buffer_.empty() && buffer_.back() == '\r') buffer_.pop_back();
    if (buffer_.find_first_not_of(" \t") == std::string::npos) continue;
    try {
      if constexpr (std::is_same_v<Record, ArticleRecord>) {
        return parse_article_line(buffer_);
      } else {
        return parse_classification_line(buffer_);
      }
    } catch (const Json::exception& e) {
      throw DataError("line " + std::to_string(line_) + ": " + e.what());
    } catch (const DataError& e) {
      throw DataError("line " + std::to_string(line_) + ": " + e.what());
    }
  }
  if (in_.bad()) throw IoError("read failed");
  return std::nullopt;
}

template class LineWriter<ArticleRecord>;
template class LineWriter<ArticleClassification>;
template class LineReader<ArticleRecord>;
template class LineReader<ArticleClassification>;

std::uint64_t write_records(std::span<const ArticleRecord> records, std::ostream& out) {
  RecordWriter writer(out);
  for (const auto& r : records) writer.write(r);
  out.flush();
  if (!out) throw IoError("flush failed", writer.count());
  return writer.count();
}

std::vector<ArticleRecord> read_records(std::istream& in) {
  std::vector<ArticleRecord> out;
  RecordReader reader(in);
  while (auto r = reader.next()) out.push_back(std::move(*r));
  return out;
}

std::uint64_t write_classifications(std::span<const ArticleClassification> items,
                                    std::ostream& out) {
  ClassificationWriter writer(out);
  for (const auto& c : items) writer.write(c);
  out.flush();
  if (!out) throw IoError("flush failed", writer.count());
  return writer.count();
}

std::vector<ArticleClassification> read_classifications(std::istream& in) {
  std::vector<ArticleClassification> out;
  ClassificationReader reader(in);
  while (auto c = reader.next()) out.push_back(std::move(*c));
  return out;
}

}  // namespace translag
