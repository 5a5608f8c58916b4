#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "fslib/core.hpp"

namespace fslib::filters {

/// kNN graph settings shared by the Laplacian Score and MCFS.
struct GraphParams {
  std::size_t k_neighbors = 5;
  std::optional<double> heat_t;  // nullopt: mean nonzero squared distance
};

/// Heat-kernel weights on the OR-symmetrized kNN graph, and their row sums.
struct HeatGraph {
  Matrix weights;
  Vector degree;
  double heat_t = 1.0;
};

HeatGraph knn_heat_graph(const DataMatrix& data, const GraphParams& params);

/// Between-class scatter over pooled within-class variance, per feature.
FeatureScores fisher_score(const DataMatrix& data, const LabelVector& labels);

/// MI (bits) between each equal-frequency-binned feature and the class.
/// bins == 0 selects the default for the sample count.
FeatureScores mutinf_fs(const DataMatrix& data, const LabelVector& labels, std::size_t bins = 0);

struct ReliefParams {
  std::size_t k = 10;
  std::size_t iterations = 0;  // 0: every sample is a probe, in order
  std::uint64_t seed = 0;
};

/// Multi-class Relief-F with k nearest hits and k nearest misses per class.
FeatureScores relief_f(const DataMatrix& data, const LabelVector& labels, const ReliefParams& params = {});

/// Locality-preservation quotient on the kNN heat-kernel graph (lower is
/// better). Constant features get the sentinel score.
FeatureScores laplacian_score(const DataMatrix& data, const GraphParams& params = {});

struct McfsParams {
  GraphParams graph;
  std::size_t clusters = 5;
  double lambda_frac = 0.01;
};

/// Multi-cluster feature selection: lasso regression of each non-trivial
/// spectral embedding vector onto the (centered) features; a feature scores
/// the largest absolute coefficient it receives.
FeatureScores mcfs_score(const DataMatrix& data, const McfsParams& params = {});

/// Greedy minimum-redundancy maximum-relevance ordering (difference form).
/// Each feature's score is its criterion value when it was picked, so the
/// order is authoritative and scores need not be monotone along it.
FeatureRanking mrmr_rank(const DataMatrix& data, const LabelVector& labels, std::size_t bins = 0);

/// Infinite feature selection: row sums of sum_{l>=1} (rA)^l on the feature
/// graph mixing spread and rank decorrelation, with r = 0.9 / rho(A).
FeatureScores inf_fs(const DataMatrix& data, double alpha = 0.5);

/// Row sums of (I - rA)^-1 - I, i.e. of sum_{l>=1} r^l A^l when r rho(A) < 1.
Vector inf_fs_path_sums(const Matrix& a, double r);

/// The Inf-FS feature adjacency.
Matrix inf_fs_adjacency(const DataMatrix& data, double alpha);

/// Eigenvector centrality on alpha * v v' + (1 - alpha) * m m', where v and m
/// are the min-max rescaled Fisher and mutual-information relevance vectors.
FeatureScores ec_fs(const DataMatrix& data, const LabelVector& labels, double alpha = 0.5,
                    std::size_t bins = 0);

/// Rescales to [0, 1]; an all-equal vector maps to all ones.
std::vector<double> min_max_rescale(const std::vector<double>& v);

}  // namespace fslib::filters
