#pragma once

#include <cstddef>

#include "fslib/core.hpp"

namespace fslib::numerics {

struct Eigenpair {
  Vector vector;  // unit 2-norm, first nonzero component positive
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Principal eigenpair of a nonnegative symmetric matrix by power iteration
/// from the all-ones vector. Stops when the max-abs change between
/// successive normalized iterates drops below tol, or after max_iter steps.
/// The eigenvalue is the Rayleigh quotient of the returned vector.
Eigenpair power_iteration(const Matrix& a, double tol = 1e-12, int max_iter = 10000);

struct SymmetricEigen {
  Vector values;   // ascending
  Matrix vectors;  // column k pairs with values[k]
};

/// Full eigendecomposition of a dense symmetric matrix by cyclic Jacobi
/// rotations. Stops once the off-diagonal Frobenius norm falls below
/// tol * max(1, ||A||_F). Eigenvectors are sign-normalized so the first
/// component with magnitude above 1e-12 is positive.
SymmetricEigen jacobi_eigen(const Matrix& a, double tol = 1e-10, int max_sweeps = 100);

/// K non-trivial smallest solutions of L y = lambda D y.
/// Works on D^-1/2 L D^-1/2, drops the trivial mode D^1/2 1 and maps the
/// remaining eigenvectors back through D^-1/2. `vectors` is n x K.
SymmetricEigen smallest_generalized_eigvecs(const Matrix& laplacian, const Vector& degree,
                                            std::size_t k);

}  // namespace fslib::numerics
