#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "fslib/core.hpp"
#include "fslib/registry.hpp"

namespace fslib::eval {

struct Fold {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

/// Seeded per-class shuffle, then round-robin assignment to folds. The
/// round-robin position carries over between classes so fold sizes stay
/// within one of each other.
std::vector<Fold> stratified_kfold(const LabelVector& labels, std::size_t folds, std::uint64_t seed);

/// Euclidean k-NN majority vote. Distance ties go to the lower train index,
/// vote ties to the smaller class id.
std::vector<int> knn_predict(const DataMatrix& train, const LabelVector& train_labels, const DataMatrix& test,
                             std::size_t k);

struct Classifier {
  enum class Kind { Knn, LinearSvm };
  Kind kind = Kind::Knn;
  std::size_t k = 3;
  double c_reg = 1.0;

  static Classifier knn(std::size_t k) { return {Kind::Knn, k, 1.0}; }
  static Classifier linear_svm(double c) { return {Kind::LinearSvm, 3, c}; }
  /// "knn:3" or "svm:1.0".
  static Classifier parse(const std::string& text);
  std::string name() const;

  std::vector<int> fit_predict(const DataMatrix& train, const LabelVector& train_labels,
                               const DataMatrix& test) const;
};

struct EvalReport {
  std::string method;
  std::vector<std::size_t> m_grid;
  std::vector<double> mean_accuracy;
  std::vector<double> std_accuracy;
  std::size_t folds = 0;
  Classifier classifier;
  std::uint64_t seed = 0;
};

/// Ranks features from a training split only.
using Ranker = std::function<FeatureRanking(const DataMatrix& train, const LabelVector& train_labels)>;

/// Per fold: rank on the training rows, then for each m train the classifier
/// on the top-m columns and score it on the held-out rows. Mean and
/// population standard deviation over folds.
EvalReport accuracy_curve(const DataMatrix& data, const LabelVector& labels, const std::string& method_name,
                          const Ranker& ranker, std::vector<std::size_t> m_grid, std::size_t folds,
                          const Classifier& classifier, std::uint64_t seed);

/// Same, with a built-in method from the registry.
EvalReport accuracy_curve(const DataMatrix& data, const LabelVector& labels, const std::string& method,
                          const ParamMap& params, std::vector<std::size_t> m_grid, std::size_t folds,
                          const Classifier& classifier, std::uint64_t seed);

std::string report_to_json(const EvalReport& report);

struct LabeledData {
  DataMatrix data;
  LabelVector labels;
};

/// Two balanced classes (first half class 0); x ~ N(4 * class, 1), y = x.
LabeledData gen_duplicate_pair(std::size_t samples, std::uint64_t seed);

/// Two balanced classes; x ~ N(4 * class, 1) informative, y ~ N(0, 1).
LabeledData gen_irrelevant_pair(std::size_t samples, std::uint64_t seed);

/// gen_duplicate_pair plus a third column w ~ N(class, 1): weaker, and
/// conditionally independent of x given the class.
LabeledData gen_redundant_with_weak(std::size_t samples, std::uint64_t seed);

/// Balanced two-class data: the first `informative` columns ~ N(gap * class, 1),
/// the remaining ones N(0, 1).
LabeledData gen_informative(std::size_t samples, std::size_t informative, std::size_t noise, double gap,
                            std::uint64_t seed);

}  // namespace fslib::eval
