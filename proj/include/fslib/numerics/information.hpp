#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fslib/core.hpp"

namespace fslib::numerics {

/// Entropy in bits of a discrete sequence.
double entropy(std::span<const int> xs);

/// Mutual information in bits from the empirical contingency table.
double mutual_information(std::span<const int> xs, std::span<const int> ys);

/// ceil(sqrt(T)) capped at 256, and at least 2.
std::size_t default_bins(std::size_t samples);

/// Equal-frequency bin edges per feature. A value v falls in the bin equal to
/// the number of edges strictly below it, so ties go to the lower bin.
class Discretizer {
 public:
  Discretizer() = default;
  Discretizer(std::vector<std::vector<double>> edges, std::size_t requested_bins)
      : edges_(std::move(edges)), requested_bins_(requested_bins) {}

  const std::vector<double>& edges(std::size_t feature) const { return edges_.at(feature); }
  std::size_t bins(std::size_t feature) const { return edges_.at(feature).size() + 1; }
  std::size_t requested_bins() const { return requested_bins_; }
  int bin_of(std::size_t feature, double value) const;

 private:
  std::vector<std::vector<double>> edges_;
  std::size_t requested_bins_ = 0;
};

struct DiscreteData {
  std::vector<std::vector<int>> columns;  // columns[j][t]
  Discretizer discretizer;
};

/// Per-feature equal-frequency binning with min(B, distinct values) bins.
DiscreteData discretize(const DataMatrix& data, std::size_t bins);

}  // namespace fslib::numerics
