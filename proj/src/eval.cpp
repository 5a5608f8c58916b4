#include "fslib/eval.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>

#include "fslib/dataset_io.hpp"
#include "fslib/numerics/linear_svm.hpp"
#include "fslib/random.hpp"

namespace fslib::eval {

std::vector<Fold> stratified_kfold(const LabelVector& labels, std::size_t folds, std::uint64_t seed) {
  if (folds < 2) throw ArgumentError("stratified_kfold: folds must be >= 2");
  const auto counts = labels.class_counts();
  for (std::size_t c = 0; c < counts.size(); ++c) {
    if (counts[c] < folds) {
      throw ArgumentError("stratified_kfold: class " + std::to_string(c) + " has " + std::to_string(counts[c]) +
                          " samples, fewer than " + std::to_string(folds) + " folds");
    }
  }
  std::vector<std::vector<std::size_t>> members(counts.size());
  for (std::size_t i = 0; i < labels.size(); ++i) members[static_cast<std::size_t>(labels[i])].push_back(i);

  Rng rng(seed);
  std::vector<std::size_t> fold_of(labels.size());
  std::size_t cursor = 0;
  for (auto& group : members) {
    rng.shuffle(std::span<std::size_t>(group));
    for (std::size_t idx : group) fold_of[idx] = cursor++ % folds;
  }
  std::vector<Fold> out(folds);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    for (std::size_t f = 0; f < folds; ++f) (fold_of[i] == f ? out[f].test : out[f].train).push_back(i);
  }
  return out;
}

std::vector<int> knn_predict(const DataMatrix& train, const LabelVector& train_labels, const DataMatrix& test,
                             std::size_t k) {
  const std::size_t t = train.samples();
  if (t == 0) throw ArgumentError("knn: empty training set");
  if (train_labels.size() != t) throw ArgumentError("knn: label count mismatch");
  if (k < 1 || k > t) throw ArgumentError("knn: k=" + std::to_string(k) + " outside [1, " + std::to_string(t) + "]");
  if (test.features() != train.features()) throw ArgumentError("knn: feature count mismatch");

  std::vector<int> out;
  out.reserve(test.samples());
  std::vector<std::pair<double, std::size_t>> dist(t);
  std::vector<int> votes(static_cast<std::size_t>(std::max(train_labels.num_classes(), 1)));
  for (std::size_t q = 0; q < test.samples(); ++q) {
    const auto query = test.row(q);
    for (std::size_t i = 0; i < t; ++i) dist[i] = {(train.row(i) - query).squaredNorm(), i};
    std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k), dist.end());
    std::fill(votes.begin(), votes.end(), 0);
    for (std::size_t r = 0; r < k; ++r) ++votes[static_cast<std::size_t>(train_labels[dist[r].second])];
    out.push_back(static_cast<int>(std::max_element(votes.begin(), votes.end()) - votes.begin()));
  }
  return out;
}

Classifier Classifier::parse(const std::string& text) {
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (kind == "knn") {
    std::size_t k = 3;
    if (!arg.empty()) {
      const auto res = std::from_chars(arg.data(), arg.data() + arg.size(), k);
      if (res.ec != std::errc() || res.ptr != arg.data() + arg.size() || k == 0) {
        throw ArgumentError("classifier knn needs a positive neighbor count, got '" + arg + "'");
      }
    }
    return knn(k);
  }
  if (kind == "svm") {
    double c = 1.0;
    if (!arg.empty()) {
      const auto res = std::from_chars(arg.data(), arg.data() + arg.size(), c);
      if (res.ec != std::errc() || res.ptr != arg.data() + arg.size() || !(c > 0.0)) {
        throw ArgumentError("classifier svm needs a positive C, got '" + arg + "'");
      }
    }
    return linear_svm(c);
  }
  throw ArgumentError("unknown classifier '" + text + "' (expected knn:K or svm:C)");
}

std::string Classifier::name() const {
  return kind == Kind::Knn ? "knn:" + std::to_string(k) : "svm:" + format_number(c_reg);
}

std::vector<int> Classifier::fit_predict(const DataMatrix& train, const LabelVector& train_labels,
                                         const DataMatrix& test) const {
  if (kind == Kind::Knn) return knn_predict(train, train_labels, test, std::min(k, train.samples()));
  const auto model = numerics::train_linear_svm(train, train_labels, c_reg);
  std::vector<int> out;
  out.reserve(test.samples());
  for (std::size_t q = 0; q < test.samples(); ++q) out.push_back(model.decision(test.row(q)) > 0.0 ? 1 : 0);
  return out;
}

EvalReport accuracy_curve(const DataMatrix& data, const LabelVector& labels, const std::string& method_name,
                          const Ranker& ranker, std::vector<std::size_t> m_grid, std::size_t folds,
                          const Classifier& classifier, std::uint64_t seed) {
  require_valid(data, &labels);
  if (m_grid.empty()) throw ArgumentError("evaluation grid is empty");
  std::sort(m_grid.begin(), m_grid.end());
  m_grid.erase(std::unique(m_grid.begin(), m_grid.end()), m_grid.end());
  if (m_grid.front() < 1 || m_grid.back() > data.features()) {
    throw ArgumentError("grid values must lie in [1, " + std::to_string(data.features()) + "]");
  }
  if (classifier.kind == Classifier::Kind::LinearSvm && labels.num_classes() != 2) {
    throw ArgumentError("svm classifier needs exactly 2 classes");
  }

  const auto splits = stratified_kfold(labels, folds, seed);
  // acc[f][g]: accuracy of fold f at grid point g.
  std::vector<std::vector<double>> acc(splits.size(), std::vector<double>(m_grid.size()));
  for (std::size_t f = 0; f < splits.size(); ++f) {
    const auto& split = splits[f];
    const DataMatrix train = data.select_rows(split.train);
    const LabelVector train_labels = labels.select(split.train);
    const DataMatrix test = data.select_rows(split.test);
    const LabelVector test_labels = labels.select(split.test);
    const FeatureRanking ranking = ranker(train, train_labels);
    if (ranking.order.size() != data.features()) throw Error("ranker returned a ranking of the wrong size");
    for (std::size_t g = 0; g < m_grid.size(); ++g) {
      const auto subset = select_top(ranking, m_grid[g]);
      const auto predicted = classifier.fit_predict(train.select_columns(subset.indices), train_labels,
                                                    test.select_columns(subset.indices));
      std::size_t hits = 0;
      for (std::size_t i = 0; i < predicted.size(); ++i) hits += predicted[i] == test_labels[i] ? 1 : 0;
      acc[f][g] = static_cast<double>(hits) / static_cast<double>(predicted.size());
    }
  }

  EvalReport report{method_name, m_grid, {}, {}, splits.size(), classifier, seed};
  const double nf = static_cast<double>(splits.size());
  for (std::size_t g = 0; g < m_grid.size(); ++g) {
    double mean = 0.0;
    for (const auto& row : acc) mean += row[g];
    mean /= nf;
    double var = 0.0;
    for (const auto& row : acc) var += (row[g] - mean) * (row[g] - mean);
    report.mean_accuracy.push_back(mean);
    report.std_accuracy.push_back(std::sqrt(var / nf));
  }
  return report;
}

EvalReport accuracy_curve(const DataMatrix& data, const LabelVector& labels, const std::string& method,
                          const ParamMap& params, std::vector<std::size_t> m_grid, std::size_t folds,
                          const Classifier& classifier, std::uint64_t seed) {
  describe_method(method);  // reject unknown names before any work
  Ranker ranker = [&](const DataMatrix& train, const LabelVector& train_labels) {
    return run_method(method, train, &train_labels, params, static_cast<std::int64_t>(seed));
  };
  return accuracy_curve(data, labels, method, ranker, std::move(m_grid), folds, classifier, seed);
}

std::string report_to_json(const EvalReport& r) {
  std::ostringstream out;
  auto array = [&](const auto& values, auto fmt) {
    out << "[";
    for (std::size_t i = 0; i < values.size(); ++i) out << (i ? ", " : "") << fmt(values[i]);
    out << "]";
  };
  auto as_int = [](std::size_t v) { return std::to_string(v); };
  auto as_real = [](double v) { return io::format_double(v); };
  out << "{\n";
  out << "  \"method\": " << io::quote(r.method) << ",\n";
  out << "  \"classifier\": " << io::quote(r.classifier.name()) << ",\n";
  out << "  \"folds\": " << r.folds << ",\n";
  out << "  \"seed\": " << r.seed << ",\n";
  out << "  \"grid\": ";
  array(r.m_grid, as_int);
  out << ",\n  \"mean_acc\": ";
  array(r.mean_accuracy, as_real);
  out << ",\n  \"std_acc\": ";
  array(r.std_accuracy, as_real);
  out << "\n}\n";
  return out.str();
}

namespace {

LabelVector balanced_labels(std::size_t samples) {
  if (samples < 4 || samples % 2 != 0) {
    throw ArgumentError("generator needs an even sample count >= 4, got " + std::to_string(samples));
  }
  std::vector<int> ids(samples, 0);
  std::fill(ids.begin() + static_cast<std::ptrdiff_t>(samples / 2), ids.end(), 1);
  return LabelVector(std::move(ids));
}

}  // namespace

LabeledData gen_informative(std::size_t samples, std::size_t informative, std::size_t noise, double gap,
                            std::uint64_t seed) {
  auto labels = balanced_labels(samples);
  Rng rng(seed);
  const auto n = static_cast<Eigen::Index>(informative + noise);
  Matrix x(static_cast<Eigen::Index>(samples), n);
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    const double cls = labels[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < n; ++j) {
      const double shift = j < static_cast<Eigen::Index>(informative) ? gap * cls : 0.0;
      x(i, j) = shift + rng.normal();
    }
  }
  return {DataMatrix(std::move(x)), std::move(labels)};
}

LabeledData gen_irrelevant_pair(std::size_t samples, std::uint64_t seed) {
  return gen_informative(samples, 1, 1, 4.0, seed);
}

LabeledData gen_duplicate_pair(std::size_t samples, std::uint64_t seed) {
  auto base = gen_informative(samples, 1, 0, 4.0, seed);
  Matrix x(base.data.values().rows(), 2);
  x.col(0) = base.data.column(0);
  x.col(1) = base.data.column(0);
  return {DataMatrix(std::move(x)), std::move(base.labels)};
}

LabeledData gen_redundant_with_weak(std::size_t samples, std::uint64_t seed) {
  auto base = gen_duplicate_pair(samples, seed);
  Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
  Matrix x(base.data.values().rows(), 3);
  x.leftCols(2) = base.data.values();
  for (Eigen::Index i = 0; i < x.rows(); ++i) x(i, 2) = base.labels[static_cast<std::size_t>(i)] + rng.normal();
  return {DataMatrix(std::move(x)), std::move(base.labels)};
}

}  // namespace fslib::eval
