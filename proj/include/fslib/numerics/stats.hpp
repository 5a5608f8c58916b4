#pragma once

#include <span>
#include <vector>

#include "fslib/core.hpp"

namespace fslib::numerics {

/// 1-based ranks; tied values share the average of their positions.
std::vector<double> mid_ranks(std::span<const double> x);

/// Pearson correlation; zero when either input has zero variance.
double pearson(std::span<const double> x, std::span<const double> y);

/// Pearson correlation of mid-ranks. Zero when either input is constant.
double spearman(std::span<const double> x, std::span<const double> y);

/// T x T matrix of squared Euclidean distances between samples.
Matrix pairwise_sq_dists(const DataMatrix& data);

}  // namespace fslib::numerics
