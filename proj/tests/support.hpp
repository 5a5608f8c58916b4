#pragma once

#include <cstdint>
#include <vector>

#include "fslib/core.hpp"
#include "fslib/random.hpp"

namespace fslib::testing {

inline Matrix random_matrix(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
  Rng rng(seed);
  Matrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = rng.normal();
  return m;
}

struct LabeledPair {
  DataMatrix data;
  LabelVector labels;
};

inline DataMatrix random_data(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
  return DataMatrix(random_matrix(rows, cols, seed));
}

/// Labels cycling through 0..classes-1, so every class is present.
inline LabelVector cyclic_labels(std::size_t samples, int classes) {
  std::vector<int> ids(samples);
  for (std::size_t i = 0; i < samples; ++i) ids[i] = static_cast<int>(i % static_cast<std::size_t>(classes));
  return LabelVector(std::move(ids));
}

/// Random class data where feature j's class means are shifted by shift[j] * class.
inline DataMatrix shifted_data(const LabelVector& labels, const std::vector<double>& shift, std::uint64_t seed) {
  Matrix m = random_matrix(static_cast<Eigen::Index>(labels.size()), static_cast<Eigen::Index>(shift.size()), seed);
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) += shift[static_cast<std::size_t>(j)] * labels[static_cast<std::size_t>(i)];
  return DataMatrix(std::move(m));
}

inline DataMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    Eigen::Index j = 0;
    for (double v : r) m(i, j++) = v;
    ++i;
  }
  return DataMatrix(std::move(m));
}

inline DataMatrix column(std::initializer_list<double> values) {
  Matrix m(static_cast<Eigen::Index>(values.size()), 1);
  Eigen::Index i = 0;
  for (double v : values) m(i++, 0) = v;
  return DataMatrix(std::move(m));
}

}  // namespace fslib::testing
