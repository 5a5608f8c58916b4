#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "fslib/core.hpp"

namespace fslib::io {

/// Where the class label lives in a delimited table.
struct LabelSpec {
  enum class Kind { ColumnIndex, LastColumn, NoLabels };
  Kind kind = Kind::LastColumn;
  std::size_t column = 0;

  static LabelSpec last() { return {Kind::LastColumn, 0}; }
  static LabelSpec none() { return {Kind::NoLabels, 0}; }
  static LabelSpec index(std::size_t k) { return {Kind::ColumnIndex, k}; }
  /// "last", "none", or a 0-based column number.
  static LabelSpec parse(const std::string& text);
};

struct Dataset {
  DataMatrix data;
  std::optional<LabelVector> labels;
};

/// Comma-separated numeric table. The label column (if any) is removed and
/// its values remapped to 0..C-1 in order of first appearance.
Dataset parse_csv(std::string_view text, const LabelSpec& spec, bool has_header = false);
Dataset load_csv(const std::filesystem::path& path, const LabelSpec& spec, bool has_header = false);

/// Sparse "label idx:val ..." lines with 1-based strictly increasing
/// indices, densified with zeros. Blank lines are skipped.
Dataset parse_libsvm(std::string_view text);
Dataset load_libsvm(const std::filesystem::path& path);

/// %.17g: enough digits to round-trip any double.
std::string format_double(double value);

/// JSON string literal with escapes.
std::string quote(const std::string& text);

/// Canonical ranking document: fixed key order, 17 significant digits.
std::string ranking_to_json(const FeatureRanking& ranking);
FeatureRanking ranking_from_json(std::string_view text);

void write_ranking(const FeatureRanking& ranking, const std::filesystem::path& path);
FeatureRanking read_ranking(const std::filesystem::path& path);

std::string subset_to_json(const FeatureSubset& subset, const std::string& method);
void write_subset(const FeatureSubset& subset, const std::string& method, const std::filesystem::path& path);

std::string read_text(const std::filesystem::path& path);
/// Writes through a sibling temporary file and renames it into place.
void write_text_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace fslib::io
