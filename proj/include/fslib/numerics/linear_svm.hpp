#pragma once

#include <cstdint>

#include "fslib/core.hpp"

namespace fslib::numerics {

struct SvmModel {
  Vector w;
  double b = 0.0;
  double c_reg = 1.0;
  int epochs = 0;
  double duality_gap = 0.0;

  /// Decision value w'x + b.
  double decision(const Eigen::Ref<const Eigen::RowVectorXd>& x) const { return x.dot(w) + b; }
};

struct SvmOptions {
  double gap_tol = 1e-6;  // relative to max(1, primal objective)
  int max_epochs = 2000;
  bool shuffle = false;   // visit samples in a seeded random order each epoch
  std::uint64_t seed = 0;
};

/// 1/2 ||w||^2 + C sum max(0, 1 - y_i (w'x_i + b)) with y_i in {-1, +1}.
double svm_primal_objective(const Matrix& x, const Vector& y, const Vector& w, double b,
                            double c_reg);

/// Bias minimizing the hinge term for a fixed w.
double svm_best_bias(const Matrix& x, const Vector& y, const Vector& w);

/// Soft-margin linear SVM with an unregularized bias, solved in the dual by
/// two-coordinate descent: each sample is visited in cyclic order and paired
/// with the partner giving the largest second-order decrease, so the
/// equality constraint sum alpha_i y_i = 0 is kept exactly. Stops when the
/// duality gap is below gap_tol or after max_epochs passes. y is +/-1.
SvmModel train_linear_svm(const Matrix& x, const Vector& y, double c_reg,
                          const SvmOptions& options = {});

/// Two-class convenience overload: class 0 maps to -1, class 1 to +1.
SvmModel train_linear_svm(const DataMatrix& data, const LabelVector& labels, double c_reg,
                          const SvmOptions& options = {});

/// Labels as +/-1 (class 0 -> -1). Throws ArgumentError unless C == 2.
Vector binary_signs(const LabelVector& labels);

}  // namespace fslib::numerics
