#include "fslib/filters.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "fslib/numerics/eigensolvers.hpp"
#include "fslib/numerics/information.hpp"
#include "fslib/numerics/lasso.hpp"
#include "fslib/numerics/stats.hpp"
#include "fslib/random.hpp"
#include "fslib/registry.hpp"

namespace fslib::filters {
namespace {

const LabelVector& require_labels(const DataMatrix& data, const LabelVector& labels) {
  require_valid(data, &labels);
  return labels;
}

// Indices of `candidates` sorted by (distance to probe, index), first `k` kept.
std::vector<std::size_t> nearest(const Matrix& dist, std::size_t probe, std::vector<std::size_t> candidates,
                                 std::size_t k) {
  k = std::min(k, candidates.size());
  const auto p = static_cast<Eigen::Index>(probe);
  std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(k), candidates.end(),
                    [&](std::size_t a, std::size_t b) {
                      const double da = dist(p, static_cast<Eigen::Index>(a));
                      const double db = dist(p, static_cast<Eigen::Index>(b));
                      return da < db || (da == db && a < b);
                    });
  candidates.resize(k);
  return candidates;
}

}  // namespace

std::vector<double> min_max_rescale(const std::vector<double>& v) {
  if (v.empty()) return {};
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  std::vector<double> out(v.size(), 1.0);
  const double span = *hi - *lo;
  if (span > 0.0) {
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = (v[i] - *lo) / span;
  }
  return out;
}

FeatureScores fisher_score(const DataMatrix& data, const LabelVector& labels) {
  require_labels(data, labels);
  const auto counts = labels.class_counts();
  const std::size_t c = counts.size();
  const double t = static_cast<double>(data.samples());
  FeatureScores out{std::vector<double>(data.features(), 0.0), Direction::HigherBetter};
  std::vector<double> sum(c), sumsq(c);
  for (std::size_t j = 0; j < data.features(); ++j) {
    const auto col = data.column(j);
    std::fill(sum.begin(), sum.end(), 0.0);
    double total = 0.0;
    for (Eigen::Index i = 0; i < col.size(); ++i) {
      sum[static_cast<std::size_t>(labels[static_cast<std::size_t>(i)])] += col[i];
      total += col[i];
    }
    const double mean = total / t;
    // Within-class variances from centered values, a second pass for accuracy.
    std::fill(sumsq.begin(), sumsq.end(), 0.0);
    for (Eigen::Index i = 0; i < col.size(); ++i) {
      const auto k = static_cast<std::size_t>(labels[static_cast<std::size_t>(i)]);
      const double d = col[i] - sum[k] / static_cast<double>(counts[k]);
      sumsq[k] += d * d;
    }
    double between = 0.0, within = 0.0;
    for (std::size_t k = 0; k < c; ++k) {
      const double nk = static_cast<double>(counts[k]);
      const double diff = sum[k] / nk - mean;
      between += nk * diff * diff;
      within += sumsq[k];  // n_k * sigma_k^2
    }
    double score;
    if (within < 1e-12) {
      score = between < 1e-12 ? 0.0 : kScoreSentinel;
    } else {
      score = between / within;
    }
    out.values[j] = score;
  }
  return out;
}

FeatureScores mutinf_fs(const DataMatrix& data, const LabelVector& labels, std::size_t bins) {
  require_labels(data, labels);
  if (bins == 0) bins = numerics::default_bins(data.samples());
  const auto disc = numerics::discretize(data, bins);
  FeatureScores out{std::vector<double>(data.features()), Direction::HigherBetter};
  for (std::size_t j = 0; j < data.features(); ++j) {
    out.values[j] = numerics::mutual_information(disc.columns[j], labels.ids());
  }
  return out;
}

FeatureScores relief_f(const DataMatrix& data, const LabelVector& labels, const ReliefParams& params) {
  require_labels(data, labels);
  if (params.k < 1) throw ArgumentError("relieff: k must be >= 1");
  const std::size_t t = data.samples();
  const std::size_t n = data.features();
  const auto counts = labels.class_counts();
  const std::size_t c = counts.size();

  std::vector<double> range(n);
  for (std::size_t j = 0; j < n; ++j) range[j] = data.column(j).maxCoeff() - data.column(j).minCoeff();

  std::vector<std::vector<std::size_t>> members(c);
  for (std::size_t i = 0; i < t; ++i) members[static_cast<std::size_t>(labels[i])].push_back(i);
  std::vector<double> prior(c);
  for (std::size_t k = 0; k < c; ++k) prior[k] = static_cast<double>(counts[k]) / static_cast<double>(t);

  std::vector<std::size_t> probes;
  if (params.iterations == 0) {
    probes.resize(t);
    std::iota(probes.begin(), probes.end(), std::size_t{0});
  } else {
    Rng rng(params.seed);
    for (std::size_t it = 0; it < params.iterations; ++it) probes.push_back(rng.index(t));
  }

  const Matrix dist = numerics::pairwise_sq_dists(data);
  const Matrix& x = data.values();
  std::vector<double> weight(n, 0.0);
  std::vector<double> delta(n);

  auto mean_diff = [&](std::size_t probe, const std::vector<std::size_t>& nbrs, double factor) {
    if (nbrs.empty()) return;
    const double scale = factor / static_cast<double>(nbrs.size());
    for (std::size_t j = 0; j < n; ++j) {
      if (range[j] <= 0.0) continue;
      double s = 0.0;
      for (std::size_t q : nbrs) {
        s += std::abs(x(static_cast<Eigen::Index>(probe), static_cast<Eigen::Index>(j)) -
                      x(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(j)));
      }
      delta[j] += scale * s / range[j];
    }
  };

  for (std::size_t probe : probes) {
    const auto own = static_cast<std::size_t>(labels[probe]);
    std::fill(delta.begin(), delta.end(), 0.0);

    std::vector<std::size_t> same;
    same.reserve(members[own].size());
    for (std::size_t q : members[own])
      if (q != probe) same.push_back(q);
    mean_diff(probe, nearest(dist, probe, std::move(same), params.k), -1.0);

    for (std::size_t k = 0; k < c; ++k) {
      if (k == own) continue;
      const double factor = prior[k] / (1.0 - prior[own]);
      mean_diff(probe, nearest(dist, probe, members[k], params.k), factor);
    }
    for (std::size_t j = 0; j < n; ++j) weight[j] += delta[j];
  }
  const double m = static_cast<double>(probes.size());
  for (auto& w : weight) w /= m;
  return FeatureScores{std::move(weight), Direction::HigherBetter};
}

HeatGraph knn_heat_graph(const DataMatrix& data, const GraphParams& params) {
  require_valid(data);
  const std::size_t t = data.samples();
  if (params.k_neighbors < 1 || params.k_neighbors >= t) {
    throw ArgumentError("graph: k_neighbors=" + std::to_string(params.k_neighbors) + " must be in [1, " +
                        std::to_string(t) + ")");
  }
  if (params.heat_t && !(*params.heat_t > 0.0)) throw ArgumentError("graph: heat t must be > 0");

  const Matrix dist = numerics::pairwise_sq_dists(data);
  const auto ti = static_cast<Eigen::Index>(t);
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> adj =
      Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>::Constant(ti, ti, false);
  for (std::size_t i = 0; i < t; ++i) {
    std::vector<std::size_t> others;
    others.reserve(t - 1);
    for (std::size_t q = 0; q < t; ++q)
      if (q != i) others.push_back(q);
    for (std::size_t q : nearest(dist, i, std::move(others), params.k_neighbors)) {
      adj(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(q)) = true;
      adj(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(i)) = true;
    }
  }

  double heat = 1.0;
  if (params.heat_t) {
    heat = *params.heat_t;
  } else {
    double total = 0.0;
    std::size_t count = 0;
    for (Eigen::Index j = 0; j < ti; ++j) {
      for (Eigen::Index i = 0; i < j; ++i) {
        if (dist(i, j) > 0.0) {
          total += dist(i, j);
          ++count;
        }
      }
    }
    if (count > 0) heat = total / static_cast<double>(count);
  }

  HeatGraph g{Matrix::Zero(ti, ti), Vector::Zero(ti), heat};
  for (Eigen::Index j = 0; j < ti; ++j) {
    for (Eigen::Index i = 0; i < ti; ++i) {
      if (adj(i, j)) g.weights(i, j) = std::exp(-dist(i, j) / heat);
    }
  }
  g.degree = g.weights.rowwise().sum();
  return g;
}

FeatureScores laplacian_score(const DataMatrix& data, const GraphParams& params) {
  const HeatGraph g = knn_heat_graph(data, params);
  const double volume = g.degree.sum();
  FeatureScores out{std::vector<double>(data.features()), Direction::LowerBetter};
  for (std::size_t j = 0; j < data.features(); ++j) {
    const auto f = data.column(j);
    if (f.minCoeff() == f.maxCoeff() || !(volume > 0.0)) {
      out.values[j] = kScoreSentinel;
      continue;
    }
    const Vector centered = f.array() - f.dot(g.degree) / volume;
    const double denom = centered.dot(g.degree.cwiseProduct(centered));
    const double numer = denom - centered.dot(g.weights * centered);
    out.values[j] = denom > 0.0 ? std::max(0.0, numer) / denom : kScoreSentinel;
  }
  return out;
}

FeatureScores mcfs_score(const DataMatrix& data, const McfsParams& params) {
  const std::size_t t = data.samples();
  if (params.clusters < 1 || params.clusters >= t) {
    throw ArgumentError("mcfs: clusters K=" + std::to_string(params.clusters) + " must be in [1, " +
                        std::to_string(t) + ")");
  }
  if (!(params.lambda_frac >= 0.0)) throw ArgumentError("mcfs: lambda_frac must be >= 0");
  const HeatGraph g = knn_heat_graph(data, params.graph);
  if (g.degree.minCoeff() <= 0.0) {
    throw NumericalError("mcfs: graph has an isolated node (heat kernel underflow); set a larger t");
  }
  const Matrix laplacian = Matrix(g.degree.asDiagonal()) - g.weights;
  const auto embedding = numerics::smallest_generalized_eigvecs(laplacian, g.degree, params.clusters);

  const Matrix x = data.values().rowwise() - data.values().colwise().mean();
  std::vector<double> scores(data.features(), 0.0);
  for (Eigen::Index k = 0; k < embedding.vectors.cols(); ++k) {
    const Vector y = embedding.vectors.col(k).array() - embedding.vectors.col(k).mean();
    const double lambda = params.lambda_frac * numerics::lasso_lambda_max(x, y);
    const Vector coef = numerics::lasso_cd(x, y, lambda);
    for (std::size_t j = 0; j < scores.size(); ++j) {
      scores[j] = std::max(scores[j], std::abs(coef[static_cast<Eigen::Index>(j)]));
    }
  }
  return FeatureScores{std::move(scores), Direction::HigherBetter};
}

FeatureRanking mrmr_rank(const DataMatrix& data, const LabelVector& labels, std::size_t bins) {
  require_labels(data, labels);
  if (bins == 0) bins = numerics::default_bins(data.samples());
  const auto disc = numerics::discretize(data, bins);
  const std::size_t n = data.features();

  std::vector<double> relevance(n), redundancy(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) relevance[j] = numerics::mutual_information(disc.columns[j], labels.ids());

  std::vector<bool> taken(n, false);
  std::vector<std::size_t> order;
  std::vector<double> scores(n, 0.0);
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t best = n;
    double best_value = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (taken[j]) continue;
      const double value = step == 0 ? relevance[j] : relevance[j] - redundancy[j] / static_cast<double>(step);
      if (best == n || value > best_value) {
        best = j;
        best_value = value;
      }
    }
    taken[best] = true;
    order.push_back(best);
    scores[best] = best_value;
    for (std::size_t j = 0; j < n; ++j) {
      if (!taken[j]) redundancy[j] += numerics::mutual_information(disc.columns[j], disc.columns[best]);
    }
  }
  auto method = describe_method("mrmr");
  method.params["bins"] = std::to_string(bins);
  return FeatureRanking{std::move(order), FeatureScores{std::move(scores), Direction::HigherBetter},
                        std::move(method), std::nullopt};
}

Matrix inf_fs_adjacency(const DataMatrix& data, double alpha) {
  require_valid(data);
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ArgumentError("inffs: alpha must be in [0, 1]");
  const std::size_t n = data.features();
  if (n < 2) throw ArgumentError("inffs: need at least 2 features");
  const double t = static_cast<double>(data.samples());

  std::vector<double> spread(n);
  std::vector<std::vector<double>> ranks(n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto col = data.column(j);
    const double mean = col.sum() / t;
    spread[j] = std::sqrt((col.array() - mean).square().sum() / t);
    ranks[j] = numerics::mid_ranks(std::span<const double>(col.data(), static_cast<std::size_t>(col.size())));
  }
  spread = min_max_rescale(spread);

  const auto ni = static_cast<Eigen::Index>(n);
  Matrix a(ni, ni);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double decorrelation = 1.0 - std::abs(numerics::pearson(ranks[i], ranks[j]));
      const double v = alpha * std::max(spread[i], spread[j]) + (1.0 - alpha) * decorrelation;
      a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
      a(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = v;
    }
  }
  return a;
}

Vector inf_fs_path_sums(const Matrix& a, double r) {
  const auto n = a.rows();
  const Matrix system = Matrix::Identity(n, n) - r * a;
  const Matrix paths = system.partialPivLu().solve(Matrix::Identity(n, n)) - Matrix::Identity(n, n);
  return paths.rowwise().sum();
}

FeatureScores inf_fs(const DataMatrix& data, double alpha) {
  const Matrix a = inf_fs_adjacency(data, alpha);
  const auto n = a.rows();
  FeatureScores out{std::vector<double>(static_cast<std::size_t>(n), 0.0), Direction::HigherBetter};
  if (a.cwiseAbs().maxCoeff() == 0.0) return out;

  const double rho = numerics::power_iteration(a).value;
  const Vector sums = inf_fs_path_sums(a, 0.9 / rho);
  for (Eigen::Index i = 0; i < n; ++i) out.values[static_cast<std::size_t>(i)] = sums[i];
  return out;
}

FeatureScores ec_fs(const DataMatrix& data, const LabelVector& labels, double alpha, std::size_t bins) {
  require_labels(data, labels);
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ArgumentError("ecfs: alpha must be in [0, 1]");
  if (data.features() < 2) throw ArgumentError("ecfs: need at least 2 features");
  const auto fisher = min_max_rescale(fisher_score(data, labels).values);
  const auto mi = min_max_rescale(mutinf_fs(data, labels, bins).values);
  const auto n = static_cast<Eigen::Index>(fisher.size());
  const Eigen::Map<const Vector> v(fisher.data(), n);
  const Eigen::Map<const Vector> m(mi.data(), n);
  const Matrix a = alpha * (v * v.transpose()) + (1.0 - alpha) * (m * m.transpose());
  const auto centrality = numerics::power_iteration(a);
  return FeatureScores{std::vector<double>(centrality.vector.begin(), centrality.vector.end()),
                       Direction::HigherBetter};
}

}  // namespace fslib::filters
