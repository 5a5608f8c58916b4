#include "fslib/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

namespace fslib {

DataMatrix::DataMatrix(Matrix values, std::vector<std::string> feature_names)
    : values_(std::move(values)), names_(std::move(feature_names)) {
  if (!names_.empty() && names_.size() != features()) {
    throw DataError("feature name count " + std::to_string(names_.size()) +
                    " does not match column count " + std::to_string(features()));
  }
}

DataMatrix DataMatrix::select_columns(std::span<const std::size_t> cols) const {
  Matrix out(values_.rows(), static_cast<Eigen::Index>(cols.size()));
  std::vector<std::string> names;
  for (std::size_t k = 0; k < cols.size(); ++k) {
    if (cols[k] >= features()) throw ArgumentError("column index out of range");
    out.col(static_cast<Eigen::Index>(k)) = column(cols[k]);
    if (!names_.empty()) names.push_back(names_[cols[k]]);
  }
  return DataMatrix(std::move(out), std::move(names));
}

DataMatrix DataMatrix::select_rows(std::span<const std::size_t> rows) const {
  Matrix out(static_cast<Eigen::Index>(rows.size()), values_.cols());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (rows[k] >= samples()) throw ArgumentError("row index out of range");
    out.row(static_cast<Eigen::Index>(k)) = row(rows[k]);
  }
  return DataMatrix(std::move(out), names_);
}

LabelVector::LabelVector(std::vector<int> ids) : ids_(std::move(ids)) {
  for (int id : ids_) {
    if (id < 0) throw DataError("negative class id " + std::to_string(id));
    num_classes_ = std::max(num_classes_, id + 1);
  }
}

std::vector<std::size_t> LabelVector::class_counts() const {
  std::vector<std::size_t> counts(static_cast<std::size_t>(num_classes_), 0);
  for (int id : ids_) ++counts[static_cast<std::size_t>(id)];
  return counts;
}

LabelVector LabelVector::select(std::span<const std::size_t> rows) const {
  std::vector<int> out;
  out.reserve(rows.size());
  for (std::size_t r : rows) out.push_back(ids_.at(r));
  return LabelVector(std::move(out));
}

char fs_type_code(FsType t) {
  switch (t) {
    case FsType::Filter: return 'f';
    case FsType::Wrapper: return 'w';
    case FsType::Embedded: return 'e';
  }
  return '?';
}

char fs_class_code(FsClass c) { return c == FsClass::Supervised ? 's' : 'u'; }

std::string direction_name(Direction d) {
  return d == Direction::HigherBetter ? "higher_better" : "lower_better";
}

Direction parse_direction(const std::string& s) {
  if (s == "higher_better") return Direction::HigherBetter;
  if (s == "lower_better") return Direction::LowerBetter;
  throw DataError("unknown score direction '" + s + "'");
}

ValidationReport validate_dataset(const DataMatrix& data, const LabelVector* labels) {
  ValidationReport report;
  const auto& v = data.values();
  if (data.samples() < 2) report.issues.push_back("fewer than 2 samples");
  if (data.features() < 1) report.issues.push_back("no features");
  for (Eigen::Index c = 0; c < v.cols(); ++c) {
    for (Eigen::Index r = 0; r < v.rows(); ++r) {
      if (!std::isfinite(v(r, c))) {
        std::ostringstream msg;
        msg << "non-finite entry at (" << r << "," << c << ")";
        report.issues.push_back(msg.str());
      }
    }
  }
  if (labels != nullptr) {
    if (labels->size() != data.samples()) {
      report.issues.push_back("label count " + std::to_string(labels->size()) +
                              " does not match sample count " + std::to_string(data.samples()));
    }
    auto counts = labels->class_counts();
    std::size_t present = 0;
    for (std::size_t c = 0; c < counts.size(); ++c) {
      if (counts[c] == 0) {
        report.issues.push_back("class " + std::to_string(c) + " missing");
      } else {
        ++present;
      }
    }
    if (present < 2) report.issues.push_back("only one class present");
  }
  return report;
}

void require_valid(const DataMatrix& data, const LabelVector* labels) {
  auto report = validate_dataset(data, labels);
  if (report.ok()) return;
  std::string msg = "invalid dataset:";
  for (const auto& issue : report.issues) msg += " " + issue + ";";
  throw DataError(msg);
}

FeatureRanking ranking_from_scores(FeatureScores scores, MethodDescriptor method,
                                   std::optional<std::int64_t> seed) {
  const auto& s = scores.values;
  for (std::size_t j = 0; j < s.size(); ++j) {
    if (std::isnan(s[j])) throw ArgumentError("NaN score for feature " + std::to_string(j));
  }
  std::vector<std::size_t> order(s.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  const bool higher = scores.direction == Direction::HigherBetter;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return higher ? s[a] > s[b] : s[a] < s[b];
  });
  return FeatureRanking{std::move(order), std::move(scores), std::move(method), seed};
}

FeatureSubset select_top(const FeatureRanking& ranking, std::size_t m) {
  const std::size_t n = ranking.order.size();
  if (m < 1 || m > n) {
    throw ArgumentError("top-m size " + std::to_string(m) + " outside [1, " + std::to_string(n) + "]");
  }
  FeatureSubset subset{{ranking.order.begin(), ranking.order.begin() + static_cast<std::ptrdiff_t>(m)}};
  std::sort(subset.indices.begin(), subset.indices.end());
  return subset;
}

DataMatrix standardize(const DataMatrix& data) {
  Matrix out = data.values();
  const double t = static_cast<double>(out.rows());
  for (Eigen::Index j = 0; j < out.cols(); ++j) {
    auto col = out.col(j);
    if (col.minCoeff() == col.maxCoeff()) {
      col.setZero();
      continue;
    }
    const double mean = col.sum() / t;
    col.array() -= mean;
    col /= std::sqrt(col.squaredNorm() / t);
  }
  return DataMatrix(std::move(out), data.feature_names());
}

}  // namespace fslib
