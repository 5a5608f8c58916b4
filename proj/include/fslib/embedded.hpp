#pragma once

#include <optional>
#include <vector>

#include "fslib/core.hpp"

namespace fslib::embedded {

struct RfeParams {
  double c_reg = 1.0;
  /// Fraction of surviving features dropped per round (at least one).
  /// Unset: one per round when n <= 200, otherwise half.
  std::optional<double> elim_fraction;
};

/// Recursive feature elimination with a linear SVM on standardized data.
/// Features are dropped in ascending order of w_j^2; the last survivor ranks
/// first. A feature's score is the number of features dropped before it.
FeatureRanking svm_rfe(const DataMatrix& data, const LabelVector& labels, const RfeParams& params = {});

struct L0Params {
  double c_reg = 1.0;
  int max_iter = 20;
};

struct L0Trace {
  std::vector<Vector> scalings;  // z after each update, z_0 = 1 excluded
  Vector z;
};

/// Zero-norm approximation by multiplicative rescaling: train on X diag(z),
/// then z <- z * |w|, until z stops changing or max_iter updates. Scalings
/// below 1e-10 of the largest are set to zero.
L0Trace l0_scaling(const DataMatrix& data, const LabelVector& labels, const L0Params& params = {});

FeatureRanking l0_fs(const DataMatrix& data, const LabelVector& labels, const L0Params& params = {});

struct FsvParams {
  double lambda = 0.5;
  double alpha = 5.0;
  int max_iter = 50;
  double tol = 1e-6;
};

struct FsvTrace {
  Vector v;                         // final feature magnitudes
  Vector w;
  double gamma = 0.0;
  std::vector<double> objectives;   // concave objective after each LP
  std::vector<Vector> iterates;     // v after each LP
  int iterations = 0;
};

/// Concave feature-selection program solved by successive linearization:
/// each step minimizes the loss plus the linearized 1 - exp(-alpha v)
/// penalty as one LP. Class 0 rows must land on the positive side.
FsvTrace fsv_solve(const DataMatrix& data, const LabelVector& labels, const FsvParams& params = {});

/// The concave objective value at a point.
double fsv_objective(const DataMatrix& data, const LabelVector& labels, const FsvParams& params,
                     const Vector& w, double gamma, const Vector& v);

FeatureRanking fsv_rank(const DataMatrix& data, const LabelVector& labels, const FsvParams& params = {});

}  // namespace fslib::embedded
