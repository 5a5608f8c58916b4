#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fslib/errors.hpp"

namespace fslib {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Stand-in for +/- infinity in score vectors, so rankings serialize cleanly.
inline constexpr double kScoreSentinel = 1e12;

/// T x n sample-by-feature matrix. Storage is column-major, so per-feature
/// loops touch contiguous memory.
class DataMatrix {
 public:
  DataMatrix() = default;
  explicit DataMatrix(Matrix values, std::vector<std::string> feature_names = {});

  const Matrix& values() const { return values_; }
  const std::vector<std::string>& feature_names() const { return names_; }

  std::size_t samples() const { return static_cast<std::size_t>(values_.rows()); }
  std::size_t features() const { return static_cast<std::size_t>(values_.cols()); }

  auto column(std::size_t j) const { return values_.col(static_cast<Eigen::Index>(j)); }
  auto row(std::size_t i) const { return values_.row(static_cast<Eigen::Index>(i)); }

  /// New matrix holding the given columns, in the given order.
  DataMatrix select_columns(std::span<const std::size_t> cols) const;
  /// New matrix holding the given rows, in the given order.
  DataMatrix select_rows(std::span<const std::size_t> rows) const;

 private:
  Matrix values_;
  std::vector<std::string> names_;
};

/// Class ids in [0, C). C is one past the largest id seen.
class LabelVector {
 public:
  LabelVector() = default;
  explicit LabelVector(std::vector<int> ids);

  const std::vector<int>& ids() const { return ids_; }
  std::size_t size() const { return ids_.size(); }
  int operator[](std::size_t i) const { return ids_[i]; }
  int num_classes() const { return num_classes_; }
  std::vector<std::size_t> class_counts() const;

  LabelVector select(std::span<const std::size_t> rows) const;

 private:
  std::vector<int> ids_;
  int num_classes_ = 0;
};

enum class Direction { HigherBetter, LowerBetter };

struct FeatureScores {
  std::vector<double> values;
  Direction direction = Direction::HigherBetter;
};

enum class FsType { Filter, Wrapper, Embedded };
enum class FsClass { Supervised, Unsupervised };

struct MethodDescriptor {
  std::string name;
  FsType fs_type = FsType::Filter;
  FsClass fs_class = FsClass::Supervised;
  std::string complexity;
  std::map<std::string, std::string> params;
  std::optional<int> iterations;
};

struct FeatureRanking {
  std::vector<std::size_t> order;  // best first
  FeatureScores scores;
  MethodDescriptor method;
  std::optional<std::int64_t> seed;
};

struct FeatureSubset {
  std::vector<std::size_t> indices;  // strictly increasing
};

struct ValidationReport {
  std::vector<std::string> issues;
  bool ok() const { return issues.empty(); }
};

char fs_type_code(FsType t);
char fs_class_code(FsClass c);
std::string direction_name(Direction d);
Direction parse_direction(const std::string& s);

/// Checks every DataMatrix / LabelVector invariant. Never throws.
ValidationReport validate_dataset(const DataMatrix& data, const LabelVector* labels = nullptr);

/// Throws DataError listing the violations when validate_dataset is not clean.
void require_valid(const DataMatrix& data, const LabelVector* labels = nullptr);

/// Sorts features by score (per direction), ties by ascending index.
FeatureRanking ranking_from_scores(FeatureScores scores, MethodDescriptor method,
                                   std::optional<std::int64_t> seed = std::nullopt);

/// First m entries of the ranking, sorted ascending.
FeatureSubset select_top(const FeatureRanking& ranking, std::size_t m);

/// Zero mean, unit population standard deviation per column;
/// zero-variance columns become all-zero.
DataMatrix standardize(const DataMatrix& data);

}  // namespace fslib
