#pragma once

#include <limits>
#include <vector>

#include "fslib/core.hpp"

namespace fslib::numerics {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct VariableBound {
  double lo = 0.0;   // finite or -inf
  double hi = kInf;  // finite or +inf
};

/// minimize c'x  subject to  A_ub x <= b_ub,  lo <= x <= hi.
struct LPProblem {
  Vector c;
  Matrix a_ub;
  Vector b_ub;
  std::vector<VariableBound> bounds;  // empty means x >= 0 for every variable
};

enum class LPStatus { Optimal, Infeasible, Unbounded };

struct LPSolution {
  LPStatus status = LPStatus::Infeasible;
  Vector x;
  double objective = 0.0;
  int pivots = 0;
};

/// Two-phase dense primal simplex with Bland's rule. Infeasible and
/// unbounded programs are reported through the status; inconsistent
/// dimensions or lo > hi throw ArgumentError.
LPSolution solve_lp(const LPProblem& problem);

}  // namespace fslib::numerics
