#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fslib/core.hpp"
#include "fslib/numerics/linear_svm.hpp"
#include "fslib/numerics/simplex.hpp"

namespace fslib::testing {

struct NamedLP {
  std::string name;
  numerics::LPProblem problem;
};

inline numerics::LPProblem make_lp(std::vector<double> c, std::vector<std::vector<double>> a, std::vector<double> b,
                                   std::vector<numerics::VariableBound> bounds = {}) {
  numerics::LPProblem p;
  p.c = Eigen::Map<Vector>(c.data(), static_cast<Eigen::Index>(c.size()));
  p.a_ub.resize(static_cast<Eigen::Index>(a.size()), static_cast<Eigen::Index>(c.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < c.size(); ++j) p.a_ub(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = a[i][j];
  p.b_ub = Eigen::Map<Vector>(b.data(), static_cast<Eigen::Index>(b.size()));
  p.bounds = std::move(bounds);
  return p;
}

/// Small linear programs with at most three variables and a bounded optimum
/// or a definite infeasibility.
inline std::vector<NamedLP> bundled_lps() {
  constexpr double inf = numerics::kInf;
  std::vector<NamedLP> lps;
  lps.push_back({"single upper bound", make_lp({-1}, {{1}}, {5})});
  lps.push_back({"empty interval", make_lp({1}, {{-1}, {1}}, {-1, 0})});
  lps.push_back({"simplex triangle", make_lp({-1, -1}, {{1, 1}}, {1})});
  lps.push_back({"two constraints", make_lp({-3, -5}, {{1, 0}, {0, 2}, {3, 2}}, {4, 12, 18})});
  lps.push_back({"covering", make_lp({2, 3}, {{-1, -1}, {-1, -3}}, {-4, -6})});
  lps.push_back({"free variables", make_lp({1, 1}, {{-1, 0}, {0, -1}, {-1, -1}}, {2, 3, 1},
                                           {{-inf, inf}, {-inf, inf}})});
  lps.push_back({"boxed 3d", make_lp({-1, -2, 1}, {{1, 1, 1}, {1, -1, 0}, {0, 1, -1}}, {4, 1, 2},
                                     {{0, 3}, {-1, 2}, {-2, 2}})});
  lps.push_back({"degenerate vertex", make_lp({-1, -1}, {{1, 0}, {0, 1}, {1, 1}, {2, 1}}, {1, 1, 2, 3})});
  lps.push_back({"equality via pair", make_lp({1, -1, 0.5}, {{1, 1, 1}, {-1, -1, -1}, {1, 0, -1}}, {2, -2, 0.5})});
  lps.push_back({"negative lower bounds", make_lp({1, 2, 3}, {{-1, -1, -1}}, {1}, {{-1, 1}, {-1, 1}, {-1, 1}})});
  lps.push_back({"infeasible 3d", make_lp({0, 0, 0}, {{1, 1, 1}, {-1, -1, -1}}, {1, -2})});
  return lps;
}

struct NamedSvmToy {
  std::string name;
  Matrix x;
  Vector y;  // +/-1
  double c_reg;
};

inline NamedSvmToy make_toy(std::string name, std::vector<std::vector<double>> pts, std::vector<double> y, double c) {
  NamedSvmToy toy{std::move(name), Matrix(static_cast<Eigen::Index>(pts.size()), static_cast<Eigen::Index>(pts[0].size())),
                  Vector(static_cast<Eigen::Index>(y.size())), c};
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = 0; j < pts[i].size(); ++j) toy.x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = pts[i][j];
    toy.y[static_cast<Eigen::Index>(i)] = y[i];
  }
  return toy;
}

/// Two-dimensional (and one 1-D) toy problems.
inline std::vector<NamedSvmToy> svm_toys() {
  std::vector<NamedSvmToy> toys;
  toys.push_back(make_toy("four points", {{0, 0}, {1, 0}, {3, 2}, {4, 3}}, {-1, -1, 1, 1}, 1.0));
  toys.push_back(make_toy("overlapping", {{0, 0}, {1, 1}, {2, 0.5}, {1.5, 1.5}, {0.5, 2}, {2.5, 2.5}},
                          {-1, -1, -1, 1, 1, 1}, 1.0));
  toys.push_back(make_toy("overlapping soft", {{0, 0}, {1, 1}, {2, 0.5}, {1.5, 1.5}, {0.5, 2}, {2.5, 2.5}},
                          {-1, -1, -1, 1, 1, 1}, 0.1));
  toys.push_back(make_toy("unbalanced", {{-1, 0.5}, {-2, -1}, {0, -1}, {1, 1}, {0.3, 0.2}}, {-1, -1, -1, 1, 1}, 2.0));
  toys.push_back(make_toy("1-d pair", {{-1, 0}, {1, 0}}, {-1, 1}, 10.0));
  return toys;
}

/// Separable with margin: a unit-norm w achieves y(w'x + b) >= 2 everywhere.
inline NamedSvmToy separable_toy() {
  return make_toy("separable", {{-3, -1}, {-2, -2}, {-4, 0}, {3, 1}, {2, 2}, {4, 0}}, {-1, -1, -1, 1, 1, 1}, 1.0);
}

inline double hinge_sum(const Matrix& x, const Vector& y, const Vector& w, double b) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < x.rows(); ++i) s += std::max(0.0, 1.0 - y[i] * (x.row(i).dot(w) + b));
  return s;
}

/// Grid-search oracle for the two-feature primal: a dense (w1, w2, b) grid,
/// re-centred and shrunk around the incumbent until the cell is tiny.
inline double svm_grid_oracle(const Matrix& x, const Vector& y, double c_reg) {
  const int half = 20;
  double centre[3] = {0.0, 0.0, 0.0};
  double span = 8.0;
  double best = std::numeric_limits<double>::infinity();
  const bool two_d = x.cols() == 2;
  for (int round = 0; round < 40; ++round) {
    double next[3] = {centre[0], centre[1], centre[2]};
    const double step = span / half;
    for (int i = -half; i <= half; ++i) {
      for (int j = two_d ? -half : 0; j <= (two_d ? half : 0); ++j) {
        for (int k = -half; k <= half; ++k) {
          Vector w(x.cols());
          w[0] = centre[0] + i * step;
          if (two_d) w[1] = centre[1] + j * step;
          const double b = centre[2] + k * step;
          const double obj = 0.5 * w.squaredNorm() + c_reg * hinge_sum(x, y, w, b);
          if (obj < best) {
            best = obj;
            next[0] = w[0];
            next[1] = two_d ? w[1] : 0.0;
            next[2] = b;
          }
        }
      }
    }
    std::copy(next, next + 3, centre);
    span *= 0.5;
  }
  return best;
}

}  // namespace fslib::testing
