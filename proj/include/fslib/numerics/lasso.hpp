#pragma once

#include "fslib/core.hpp"

namespace fslib::numerics {

/// max_j |X_j' y| / T: the smallest penalty giving an all-zero solution.
double lasso_lambda_max(const Matrix& x, const Vector& y);

/// Minimizes (1/2T)||y - X a||^2 + lambda ||a||_1 by cyclic coordinate
/// descent with soft-thresholding. Stops when the largest coordinate change
/// in a sweep is below tol.
Vector lasso_cd(const Matrix& x, const Vector& y, double lambda, double tol = 1e-10,
                int max_iter = 100000);

}  // namespace fslib::numerics
