#include "fslib/numerics/linear_svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "fslib/random.hpp"

namespace fslib::numerics {

double svm_primal_objective(const Matrix& x, const Vector& y, const Vector& w, double b,
                            double c_reg) {
  const Vector margins = (x * w).array() + b;
  double hinge = 0.0;
  for (Eigen::Index i = 0; i < y.size(); ++i) hinge += std::max(0.0, 1.0 - y[i] * margins[i]);
  return 0.5 * w.squaredNorm() + c_reg * hinge;
}

double svm_best_bias(const Matrix& x, const Vector& y, const Vector& w) {
  // The hinge sum is piecewise linear in b with one kink per sample; its
  // slope starts at -(#positives) and rises by one at each kink, so the
  // minimum lies between the P-th and (P+1)-th smallest kinks.
  const Vector s = x * w;
  std::vector<double> kinks(static_cast<std::size_t>(y.size()));
  std::size_t positives = 0;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    kinks[static_cast<std::size_t>(i)] = y[i] - s[i];
    if (y[i] > 0.0) ++positives;
  }
  std::sort(kinks.begin(), kinks.end());
  if (positives == 0) return kinks.front() - 1.0;
  if (positives == kinks.size()) return kinks.back() + 1.0;
  return 0.5 * (kinks[positives - 1] + kinks[positives]);
}

namespace {

// Near a hard-margin optimum the support vectors sit at functional margin
// 1 - eps. When the classes are separated, rescale (w, b) so every margin is
// at least 1; keep the result only if it is still certified by the dual bound.
void polish_margin(const Matrix& x, const Vector& y, double c_reg, double dual, double gap_tol, SvmModel& model) {
  const Vector s = x * model.w;
  double max_neg = -std::numeric_limits<double>::infinity();
  double min_pos = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (y[i] > 0) min_pos = std::min(min_pos, s[i]);
    else max_neg = std::max(max_neg, s[i]);
  }
  const double half_gap = 0.5 * (min_pos - max_neg);
  if (!(half_gap > 0.0)) return;
  double scale = 1.0 / half_gap;
  Vector w = model.w * scale;
  double b = -0.5 * (min_pos + max_neg) * scale;
  for (int attempt = 0; attempt < 8; ++attempt) {
    const Vector margins = y.cwiseProduct((x * w).array().matrix() + Vector::Constant(y.size(), b));
    if (margins.minCoeff() >= 1.0) break;
    w *= 1.0 + 4.0 * std::numeric_limits<double>::epsilon();
    b *= 1.0 + 4.0 * std::numeric_limits<double>::epsilon();
  }
  const double primal = svm_primal_objective(x, y, w, b, c_reg);
  if (primal - dual > gap_tol * std::max(1.0, std::abs(primal))) return;
  if (primal > svm_primal_objective(x, y, model.w, model.b, c_reg) + gap_tol * std::max(1.0, std::abs(primal))) return;
  model.w = w;
  model.b = b;
  model.duality_gap = primal - dual;
}

}  // namespace

Vector binary_signs(const LabelVector& labels) {
  if (labels.num_classes() != 2) {
    throw ArgumentError("linear SVM requires exactly 2 classes, got " + std::to_string(labels.num_classes()));
  }
  Vector y(static_cast<Eigen::Index>(labels.size()));
  for (std::size_t i = 0; i < labels.size(); ++i) y[static_cast<Eigen::Index>(i)] = labels[i] == 0 ? -1.0 : 1.0;
  return y;
}

SvmModel train_linear_svm(const Matrix& x, const Vector& y, double c_reg, const SvmOptions& options) {
  if (!(c_reg > 0.0)) throw ArgumentError("linear SVM: C must be > 0");
  if (x.rows() != y.size()) throw ArgumentError("linear SVM: sample count mismatch");
  bool has_pos = false, has_neg = false;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    if (y[i] == 1.0) has_pos = true;
    else if (y[i] == -1.0) has_neg = true;
    else throw ArgumentError("linear SVM: targets must be +1 or -1");
  }
  if (!has_pos || !has_neg) throw ArgumentError("linear SVM: both classes must be present");

  const Eigen::Index t = x.rows();
  const Matrix gram = x * x.transpose();
  const double cap = c_reg;
  Vector alpha = Vector::Zero(t);
  Vector grad = Vector::Constant(t, -1.0);  // Q alpha - 1

  auto in_up = [&](Eigen::Index k) { return y[k] > 0 ? alpha[k] < cap : alpha[k] > 0.0; };
  auto in_low = [&](Eigen::Index k) { return y[k] > 0 ? alpha[k] > 0.0 : alpha[k] < cap; };
  auto score = [&](Eigen::Index k) { return -y[k] * grad[k]; };

  // One two-coordinate step along alpha_up += y_up d, alpha_low -= y_low d.
  auto step = [&](Eigen::Index up, Eigen::Index low) {
    const double b = score(up) - score(low);
    double curvature = gram(up, up) + gram(low, low) - 2.0 * gram(up, low);
    if (curvature <= 1e-12) curvature = 1e-12;
    double d = b / curvature;
    d = std::min(d, y[up] > 0 ? cap - alpha[up] : alpha[up]);
    d = std::min(d, y[low] > 0 ? alpha[low] : cap - alpha[low]);
    if (!(d > 0.0)) return;
    alpha[up] = std::clamp(alpha[up] + y[up] * d, 0.0, cap);
    alpha[low] = std::clamp(alpha[low] - y[low] * d, 0.0, cap);
    grad += d * y.cwiseProduct(gram.col(up) - gram.col(low));
  };

  std::vector<Eigen::Index> order(static_cast<std::size_t>(t));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  Rng rng(options.seed);

  SvmModel model;
  model.c_reg = c_reg;
  double dual = 0.0;
  for (int epoch = 1; epoch <= options.max_epochs; ++epoch) {
    if (options.shuffle) rng.shuffle(std::span<Eigen::Index>(order));
    for (Eigen::Index i : order) {
      const double si = score(i);
      Eigen::Index best = -1;
      bool i_is_up = true;
      double best_gain = 0.0;
      const bool up_i = in_up(i);
      const bool low_i = in_low(i);
      for (Eigen::Index j = 0; j < t; ++j) {
        if (j == i) continue;
        const double sj = score(j);
        double b = 0.0;
        bool as_up = true;
        if (up_i && in_low(j) && si - sj > 1e-12) {
          b = si - sj;
        } else if (low_i && in_up(j) && sj - si > 1e-12) {
          b = sj - si;
          as_up = false;
        } else {
          continue;
        }
        double curvature = gram(i, i) + gram(j, j) - 2.0 * gram(i, j);
        if (curvature <= 1e-12) curvature = 1e-12;
        const double gain = b * b / curvature;
        if (gain > best_gain) {
          best_gain = gain;
          best = j;
          i_is_up = as_up;
        }
      }
      if (best >= 0) {
        if (i_is_up) step(i, best);
        else step(best, i);
      }
    }

    model.epochs = epoch;
    double max_up = -std::numeric_limits<double>::infinity();
    double min_low = std::numeric_limits<double>::infinity();
    for (Eigen::Index k = 0; k < t; ++k) {
      if (in_up(k)) max_up = std::max(max_up, score(k));
      if (in_low(k)) min_low = std::min(min_low, score(k));
    }
    const Vector w = x.transpose() * alpha.cwiseProduct(y);
    const double b = svm_best_bias(x, y, w);
    const double primal = svm_primal_objective(x, y, w, b, c_reg);
    dual = alpha.sum() - 0.5 * w.squaredNorm();
    model.w = w;
    model.b = b;
    model.duality_gap = primal - dual;
    if (max_up - min_low < 1e-12 || model.duality_gap <= options.gap_tol * std::max(1.0, std::abs(primal))) {
      break;
    }
  }
  polish_margin(x, y, c_reg, dual, options.gap_tol, model);
  return model;
}

SvmModel train_linear_svm(const DataMatrix& data, const LabelVector& labels, double c_reg,
                          const SvmOptions& options) {
  require_valid(data, &labels);
  return train_linear_svm(data.values(), binary_signs(labels), c_reg, options);
}

}  // namespace fslib::numerics
