#include "fslib/numerics/lasso.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace fslib::numerics {
namespace {

double soft_threshold(double z, double gamma) {
  if (z > gamma) return z - gamma;
  if (z < -gamma) return z + gamma;
  return 0.0;
}

void check_dims(const Matrix& x, const Vector& y) {
  if (x.rows() != y.size()) {
    throw ArgumentError("lasso: X has " + std::to_string(x.rows()) + " rows but y has " +
                        std::to_string(y.size()) + " entries");
  }
  if (x.rows() == 0) throw ArgumentError("lasso: no samples");
}

}  // namespace

double lasso_lambda_max(const Matrix& x, const Vector& y) {
  check_dims(x, y);
  if (x.cols() == 0) return 0.0;
  return (x.transpose() * y).cwiseAbs().maxCoeff() / static_cast<double>(x.rows());
}

Vector lasso_cd(const Matrix& x, const Vector& y, double lambda, double tol, int max_iter) {
  check_dims(x, y);
  if (!(lambda >= 0.0)) throw ArgumentError("lasso: lambda must be >= 0");
  const double t = static_cast<double>(x.rows());
  const Eigen::Index n = x.cols();
  const Vector col_sq = x.colwise().squaredNorm().transpose() / t;

  Vector coef = Vector::Zero(n);
  Vector residual = y;
  for (int sweep = 0; sweep < max_iter; ++sweep) {
    double max_change = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (col_sq[j] == 0.0) continue;
      const double old = coef[j];
      // rho = X_j' (partial residual with a_j removed) / T
      const double rho = x.col(j).dot(residual) / t + col_sq[j] * old;
      const double next = soft_threshold(rho, lambda) / col_sq[j];
      if (next != old) {
        residual -= (next - old) * x.col(j);
        coef[j] = next;
        max_change = std::max(max_change, std::abs(next - old));
      }
    }
    if (max_change < tol) break;
  }
  return coef;
}

}  // namespace fslib::numerics
