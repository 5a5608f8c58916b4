#include "fslib/numerics/eigensolvers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace fslib::numerics {
namespace {

void orient(Eigen::Ref<Vector> v) {
  const double scale = v.cwiseAbs().maxCoeff();
  if (scale == 0.0) return;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) > 1e-12 * scale) {
      if (v[i] < 0.0) v = -v;
      return;
    }
  }
}

void require_square(const Matrix& a, const char* who) {
  if (a.rows() != a.cols()) {
    throw ArgumentError(std::string(who) + ": matrix is " + std::to_string(a.rows()) + "x" +
                        std::to_string(a.cols()) + ", expected square");
  }
  if (!a.allFinite()) throw ArgumentError(std::string(who) + ": matrix has non-finite entries");
}

}  // namespace

Eigenpair power_iteration(const Matrix& a, double tol, int max_iter) {
  require_square(a, "power_iteration");
  if (a.size() == 0) throw ArgumentError("power_iteration: empty matrix");
  if (a.cwiseAbs().maxCoeff() == 0.0) throw NumericalError("power_iteration: zero matrix");

  Eigenpair out;
  Vector x = Vector::Ones(a.rows()).normalized();
  for (int it = 1; it <= max_iter; ++it) {
    Vector next = a * x;
    const double norm = next.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) {
      throw NumericalError("power_iteration: iterate collapsed to zero");
    }
    next /= norm;
    const double change = (next - x).cwiseAbs().maxCoeff();
    x = std::move(next);
    out.iterations = it;
    if (change < tol) {
      out.converged = true;
      break;
    }
  }
  orient(x);
  out.value = x.dot(a * x);
  out.vector = std::move(x);
  return out;
}

SymmetricEigen jacobi_eigen(const Matrix& input, double tol, int max_sweeps) {
  require_square(input, "jacobi_eigen");
  const Eigen::Index n = input.rows();
  Matrix a = 0.5 * (input + input.transpose());
  Matrix v = Matrix::Identity(n, n);
  const double threshold = tol * std::max(1.0, a.norm());

  auto off_norm = [&] {
    double s = 0.0;
    for (Eigen::Index q = 0; q < n; ++q)
      for (Eigen::Index p = 0; p < q; ++p) s += 2.0 * a(p, q) * a(p, q);
    return std::sqrt(s);
  };

  bool converged = false;
  for (int sweep = 0; sweep <= max_sweeps; ++sweep) {
    if (off_norm() < threshold) {
      converged = true;
      break;
    }
    if (sweep == max_sweeps) break;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  if (!converged) {
    throw NumericalError("jacobi_eigen: no convergence after " + std::to_string(max_sweeps) + " sweeps");
  }

  std::vector<Eigen::Index> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), Eigen::Index{0});
  std::stable_sort(idx.begin(), idx.end(), [&](Eigen::Index i, Eigen::Index j) { return a(i, i) < a(j, j); });

  SymmetricEigen out{Vector(n), Matrix(n, n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    const auto src = idx[static_cast<std::size_t>(k)];
    out.values[k] = a(src, src);
    out.vectors.col(k) = v.col(src);
    orient(out.vectors.col(k));
  }
  return out;
}

SymmetricEigen smallest_generalized_eigvecs(const Matrix& laplacian, const Vector& degree,
                                            std::size_t k) {
  require_square(laplacian, "smallest_generalized_eigvecs");
  const Eigen::Index n = laplacian.rows();
  if (degree.size() != n) throw ArgumentError("smallest_generalized_eigvecs: degree size mismatch");
  if (static_cast<Eigen::Index>(k) >= n) {
    throw ArgumentError("smallest_generalized_eigvecs: K=" + std::to_string(k) +
                        " must be below matrix order " + std::to_string(n));
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(degree[i] > 0.0)) {
      throw ArgumentError("smallest_generalized_eigvecs: non-positive degree at node " + std::to_string(i));
    }
  }
  const Vector inv_sqrt = degree.cwiseSqrt().cwiseInverse();
  Matrix m = inv_sqrt.asDiagonal() * laplacian * inv_sqrt.asDiagonal();
  m = 0.5 * (m + m.transpose());

  // The trivial mode D^1/2 1 is lifted above the whole spectrum so that the
  // K smallest eigenpairs that remain are exactly the non-trivial ones, even
  // when the graph is disconnected and eigenvalue 0 is repeated.
  const Vector trivial = degree.cwiseSqrt().normalized();
  const double lift = m.trace() + 1.0;
  m += lift * trivial * trivial.transpose();

  const auto full = jacobi_eigen(m);
  SymmetricEigen out{full.values.head(static_cast<Eigen::Index>(k)),
                     Matrix(n, static_cast<Eigen::Index>(k))};
  for (Eigen::Index c = 0; c < static_cast<Eigen::Index>(k); ++c) {
    out.vectors.col(c) = inv_sqrt.asDiagonal() * full.vectors.col(c);
  }
  return out;
}

}  // namespace fslib::numerics
