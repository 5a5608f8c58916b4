#include "fslib/dataset_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include <unistd.h>

#include <json.hpp>

#include "fslib/registry.hpp"

namespace fslib::io {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

std::vector<std::string_view> lines_of(std::string_view text) {
  auto lines = split(text, '\n');
  for (auto& l : lines) l = trim(l);
  return lines;
}

bool parse_number(std::string_view token, double& out) {
  token = trim(token);
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  if (token.empty()) return false;
  const auto res = std::from_chars(token.data(), token.data() + token.size(), out);
  return res.ec == std::errc() && res.ptr == token.data() + token.size();
}

// Class ids by order of first appearance. Numeric tokens are keyed by value
// so "1" and "1.0" name the same class.
class LabelMapper {
 public:
  int map(std::string_view token) {
    double v = 0.0;
    const std::string key = parse_number(token, v) ? "#" + format_double(v) : "$" + std::string(trim(token));
    auto [it, inserted] = ids_.emplace(key, static_cast<int>(ids_.size()));
    return it->second;
  }

 private:
  std::map<std::string, int> ids_;
};

}  // namespace

LabelSpec LabelSpec::parse(const std::string& text) {
  if (text == "last") return last();
  if (text == "none") return none();
  std::size_t k = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), k);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size() || text.empty()) {
    throw ArgumentError("label column must be 'last', 'none' or a column number, got '" + text + "'");
  }
  return index(k);
}

Dataset parse_csv(std::string_view text, const LabelSpec& spec, bool has_header) {
  std::vector<std::vector<std::string_view>> rows;
  std::vector<std::size_t> line_numbers;
  std::vector<std::string_view> header;
  std::size_t line_no = 0;
  for (auto line : lines_of(text)) {
    ++line_no;
    if (line.empty()) continue;
    auto cells = split(line, ',');
    if (has_header && header.empty()) {
      header = std::move(cells);
      continue;
    }
    rows.push_back(std::move(cells));
    line_numbers.push_back(line_no);
  }
  if (rows.empty()) throw DataError("empty table: no data rows");
  const std::size_t width = rows.front().size();
  if (!header.empty() && header.size() != width) {
    throw DataError("header has " + std::to_string(header.size()) + " columns but data has " + std::to_string(width));
  }
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != width) {
      throw DataError("ragged row at line " + std::to_string(line_numbers[r]) + ": expected " +
                      std::to_string(width) + " cells, found " + std::to_string(rows[r].size()));
    }
  }

  std::optional<std::size_t> label_col;
  if (spec.kind == LabelSpec::Kind::LastColumn) label_col = width - 1;
  if (spec.kind == LabelSpec::Kind::ColumnIndex) {
    if (spec.column >= width) {
      throw ArgumentError("label column " + std::to_string(spec.column) + " out of range for " +
                          std::to_string(width) + " columns");
    }
    label_col = spec.column;
  }
  const std::size_t n = width - (label_col ? 1 : 0);
  if (n == 0) throw DataError("table has no feature columns");

  Matrix values(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(n));
  std::vector<int> ids;
  LabelMapper mapper;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::size_t out_col = 0;
    for (std::size_t c = 0; c < width; ++c) {
      if (label_col && c == *label_col) {
        ids.push_back(mapper.map(rows[r][c]));
        continue;
      }
      double v = 0.0;
      if (!parse_number(rows[r][c], v)) {
        throw DataError("non-numeric cell '" + std::string(trim(rows[r][c])) + "' at line " +
                        std::to_string(line_numbers[r]) + ", column " + std::to_string(c + 1));
      }
      values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(out_col++)) = v;
    }
  }
  std::vector<std::string> names;
  for (std::size_t c = 0; c < header.size(); ++c)
    if (!label_col || c != *label_col) names.emplace_back(trim(header[c]));

  Dataset ds{DataMatrix(std::move(values), std::move(names)), std::nullopt};
  if (label_col) ds.labels = LabelVector(std::move(ids));
  return ds;
}

Dataset load_csv(const std::filesystem::path& path, const LabelSpec& spec, bool has_header) {
  return parse_csv(read_text(path), spec, has_header);
}

Dataset parse_libsvm(std::string_view text) {
  struct Row {
    std::vector<std::pair<std::size_t, double>> entries;
  };
  std::vector<Row> rows;
  std::vector<int> ids;
  LabelMapper mapper;
  std::size_t width = 0;
  std::size_t line_no = 0;
  for (auto line : lines_of(text)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = trim(line.substr(0, hash));
    if (line.empty()) continue;
    std::vector<std::string_view> tokens;
    for (auto tok : split(line, ' ')) {
      for (auto sub : split(tok, '\t'))
        if (!trim(sub).empty()) tokens.push_back(trim(sub));
    }
    ids.push_back(mapper.map(tokens.front()));
    Row row;
    std::size_t last_index = 0;
    for (std::size_t k = 1; k < tokens.size(); ++k) {
      const auto colon = tokens[k].find(':');
      std::size_t idx = 0;
      double v = 0.0;
      const auto key = tokens[k].substr(0, colon == std::string_view::npos ? 0 : colon);
      const auto res = std::from_chars(key.data(), key.data() + key.size(), idx);
      if (colon == std::string_view::npos || res.ec != std::errc() || res.ptr != key.data() + key.size() ||
          idx == 0 || !parse_number(tokens[k].substr(colon + 1), v)) {
        throw DataError("unparsable token '" + std::string(tokens[k]) + "' at line " + std::to_string(line_no));
      }
      if (idx <= last_index) {
        throw DataError("feature indices not strictly increasing at line " + std::to_string(line_no) + " (" +
                        std::to_string(idx) + " after " + std::to_string(last_index) + ")");
      }
      last_index = idx;
      width = std::max(width, idx);
      row.entries.emplace_back(idx - 1, v);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw DataError("empty LIBSVM file: no data rows");
  if (width == 0) throw DataError("LIBSVM file has no feature entries");
  Matrix values = Matrix::Zero(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(width));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (const auto& [c, v] : rows[r].entries) values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v;
  return Dataset{DataMatrix(std::move(values)), LabelVector(std::move(ids))};
}

Dataset load_libsvm(const std::filesystem::path& path) { return parse_libsvm(read_text(path)); }

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

std::string quote(const std::string& text) { return nlohmann::json(text).dump(); }

std::string ranking_to_json(const FeatureRanking& r) {
  std::ostringstream out;
  out << "{\n";
  out << "  \"method\": " << quote(r.method.name) << ",\n";
  out << "  \"fs_type\": \"" << fs_type_code(r.method.fs_type) << "\",\n";
  out << "  \"fs_class\": \"" << fs_class_code(r.method.fs_class) << "\",\n";
  out << "  \"direction\": \"" << direction_name(r.scores.direction) << "\",\n";
  out << "  \"scores\": [";
  for (std::size_t j = 0; j < r.scores.values.size(); ++j) out << (j ? ", " : "") << format_double(r.scores.values[j]);
  out << "],\n";
  out << "  \"order\": [";
  for (std::size_t j = 0; j < r.order.size(); ++j) out << (j ? ", " : "") << r.order[j];
  out << "],\n";
  out << "  \"params\": {";
  bool first = true;
  for (const auto& [k, v] : r.method.params) {
    out << (first ? "" : ", ") << quote(k) << ": " << quote(v);
    first = false;
  }
  out << "},\n";
  out << "  \"seed\": " << (r.seed ? std::to_string(*r.seed) : "null") << "\n";
  out << "}\n";
  return out.str();
}

FeatureRanking ranking_from_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
    FeatureRanking r;
    const auto name = doc.at("method").get<std::string>();
    try {
      r.method = describe_method(name);
    } catch (const ArgumentError&) {
      r.method.name = name;
    }
    const auto type = doc.at("fs_type").get<std::string>();
    r.method.fs_type = type == "f" ? FsType::Filter : type == "w" ? FsType::Wrapper : FsType::Embedded;
    r.method.fs_class = doc.at("fs_class").get<std::string>() == "s" ? FsClass::Supervised : FsClass::Unsupervised;
    r.scores.direction = parse_direction(doc.at("direction").get<std::string>());
    r.scores.values = doc.at("scores").get<std::vector<double>>();
    r.order = doc.at("order").get<std::vector<std::size_t>>();
    r.method.params = doc.at("params").get<std::map<std::string, std::string>>();
    if (!doc.at("seed").is_null()) r.seed = doc.at("seed").get<std::int64_t>();
    const std::size_t n = r.order.size();
    std::vector<bool> seen(n, false);
    if (r.scores.values.size() != n) throw DataError("ranking document: scores and order lengths differ");
    for (auto j : r.order) {
      if (j >= n || seen[j]) throw DataError("ranking document: order is not a permutation");
      seen[j] = true;
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed ranking document: ") + e.what());
  }
}

void write_ranking(const FeatureRanking& ranking, const std::filesystem::path& path) {
  write_text_atomic(path, ranking_to_json(ranking));
}

FeatureRanking read_ranking(const std::filesystem::path& path) {
  try {
    return ranking_from_json(read_text(path));
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

std::string subset_to_json(const FeatureSubset& subset, const std::string& method) {
  std::ostringstream out;
  out << "{\n  \"method\": " << quote(method) << ",\n  \"m\": " << subset.indices.size() << ",\n  \"indices\": [";
  for (std::size_t k = 0; k < subset.indices.size(); ++k) out << (k ? ", " : "") << subset.indices[k];
  out << "]\n}\n";
  return out.str();
}

void write_subset(const FeatureSubset& subset, const std::string& method, const std::filesystem::path& path) {
  write_text_atomic(path, subset_to_json(subset, method));
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_atomic(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot open '" + path.string() + "' for writing");
    out << content;
    out.flush();
    if (!out) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw DataError("write to '" + path.string() + "' failed");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignored;
    std::filesystem::remove(tmp, ignored);
    throw DataError("cannot write '" + path.string() + "': " + ec.message());
  }
}

}  // namespace fslib::io
