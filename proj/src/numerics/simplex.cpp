#include "fslib/numerics/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace fslib::numerics {
namespace {

using Tableau = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

constexpr double kPivotTol = 1e-9;
constexpr double kCostTol = 1e-9;

// Original variable x_i = offset + sum over its columns of sign * x'_col.
struct ColumnMap {
  Eigen::Index var;
  double sign;
};

class DenseSimplex {
 public:
  // Rows of `tab` are constraints [A | rhs] with rhs >= 0 and a feasible
  // starting basis given by `basis`. Columns at or beyond `first_artificial`
  // may never re-enter the basis.
  DenseSimplex(Tableau tab, std::vector<Eigen::Index> basis, Eigen::Index first_artificial)
      : tab_(std::move(tab)), basis_(std::move(basis)), first_artificial_(first_artificial) {}

  // Minimizes cost' x over the current basis. Returns false when unbounded.
  bool optimize(const Vector& cost, bool allow_artificial) {
    const Eigen::Index m = tab_.rows();
    const Eigen::Index rhs = tab_.cols() - 1;
    const Eigen::Index limit = allow_artificial ? rhs : first_artificial_;
    for (;;) {
      // Reduced costs d = c - c_B' B^-1 A, recomputed from scratch each pivot;
      // the tableau rows already hold B^-1 A.
      Eigen::RowVectorXd d = cost.head(rhs).transpose();
      for (Eigen::Index r = 0; r < m; ++r) {
        const double cb = cost[basis_[static_cast<std::size_t>(r)]];
        if (cb != 0.0) d -= cb * tab_.row(r).head(rhs);
      }
      Eigen::Index enter = -1;
      for (Eigen::Index j = 0; j < limit; ++j) {
        if (d[j] < -kCostTol) {
          enter = j;  // Bland: lowest index with negative reduced cost
          break;
        }
      }
      if (enter < 0) return true;

      Eigen::Index leave = -1;
      double best_ratio = 0.0;
      for (Eigen::Index r = 0; r < m; ++r) {
        const double a = tab_(r, enter);
        if (a <= kPivotTol) continue;
        const double ratio = tab_(r, rhs) / a;
        if (leave < 0 || ratio < best_ratio - 1e-12 ||
            (ratio <= best_ratio + 1e-12 && basis_[static_cast<std::size_t>(r)] < basis_[static_cast<std::size_t>(leave)])) {
          leave = r;
          best_ratio = ratio;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }

  void pivot(Eigen::Index row, Eigen::Index col) {
    if (++pivots_ > kMaxPivots) throw NumericalError("solve_lp: pivot limit exceeded");
    tab_.row(row) /= tab_(row, col);
    for (Eigen::Index r = 0; r < tab_.rows(); ++r) {
      if (r == row) continue;
      const double f = tab_(r, col);
      if (f != 0.0) tab_.row(r) -= f * tab_.row(row);
    }
    basis_[static_cast<std::size_t>(row)] = col;
  }

  // Pivots basic artificials out wherever a structural or slack column can
  // replace them. Rows where none can are redundant and keep a zero artificial.
  void expel_artificials() {
    for (Eigen::Index r = 0; r < tab_.rows(); ++r) {
      if (basis_[static_cast<std::size_t>(r)] < first_artificial_) continue;
      for (Eigen::Index j = 0; j < first_artificial_; ++j) {
        if (std::abs(tab_(r, j)) > kPivotTol) {
          pivot(r, j);
          break;
        }
      }
    }
  }

  Vector primal(Eigen::Index columns) const {
    Vector x = Vector::Zero(columns);
    const Eigen::Index rhs = tab_.cols() - 1;
    for (Eigen::Index r = 0; r < tab_.rows(); ++r) {
      const auto b = basis_[static_cast<std::size_t>(r)];
      if (b < columns) x[b] = std::max(0.0, tab_(r, rhs));
    }
    return x;
  }

  int pivots() const { return pivots_; }

 private:
  static constexpr int kMaxPivots = 1000000;
  Tableau tab_;
  std::vector<Eigen::Index> basis_;
  Eigen::Index first_artificial_;
  int pivots_ = 0;
};

}  // namespace

LPSolution solve_lp(const LPProblem& p) {
  const Eigen::Index nvar = p.c.size();
  if (p.a_ub.cols() != nvar && p.a_ub.size() != 0) {
    throw ArgumentError("solve_lp: A_ub has " + std::to_string(p.a_ub.cols()) + " columns, expected " +
                        std::to_string(nvar));
  }
  if (p.a_ub.rows() != p.b_ub.size()) throw ArgumentError("solve_lp: A_ub and b_ub row counts differ");
  if (!p.bounds.empty() && static_cast<Eigen::Index>(p.bounds.size()) != nvar) {
    throw ArgumentError("solve_lp: bounds size mismatch");
  }
  std::vector<VariableBound> bounds = p.bounds.empty() ? std::vector<VariableBound>(static_cast<std::size_t>(nvar))
                                                       : p.bounds;
  for (const auto& b : bounds) {
    if (b.lo > b.hi || std::isnan(b.lo) || std::isnan(b.hi) || b.lo == kInf || b.hi == -kInf) {
      throw ArgumentError("solve_lp: invalid variable bound");
    }
  }

  // Substitute every variable by nonnegative columns plus a constant offset.
  std::vector<ColumnMap> cols;
  Vector offset = Vector::Zero(nvar);
  struct UpperRow {
    Eigen::Index col;
    double limit;
  };
  std::vector<UpperRow> upper_rows;
  for (Eigen::Index i = 0; i < nvar; ++i) {
    const auto& b = bounds[static_cast<std::size_t>(i)];
    const auto col = static_cast<Eigen::Index>(cols.size());
    if (std::isfinite(b.lo)) {
      offset[i] = b.lo;
      cols.push_back({i, 1.0});
      if (std::isfinite(b.hi)) upper_rows.push_back({col, b.hi - b.lo});
    } else if (std::isfinite(b.hi)) {
      offset[i] = b.hi;
      cols.push_back({i, -1.0});
    } else {
      cols.push_back({i, 1.0});
      cols.push_back({i, -1.0});
    }
  }

  const Eigen::Index ns = static_cast<Eigen::Index>(cols.size());
  const Eigen::Index m = p.a_ub.rows() + static_cast<Eigen::Index>(upper_rows.size());
  Matrix a = Matrix::Zero(m, ns);
  Vector rhs(m);
  for (Eigen::Index r = 0; r < p.a_ub.rows(); ++r) {
    for (Eigen::Index c = 0; c < ns; ++c) {
      const auto& cm = cols[static_cast<std::size_t>(c)];
      a(r, c) = p.a_ub(r, cm.var) * cm.sign;
    }
    rhs[r] = p.b_ub[r] - p.a_ub.row(r).dot(offset);
  }
  for (std::size_t u = 0; u < upper_rows.size(); ++u) {
    const Eigen::Index r = p.a_ub.rows() + static_cast<Eigen::Index>(u);
    a(r, upper_rows[u].col) = 1.0;
    rhs[r] = upper_rows[u].limit;
  }
  Vector cost_s(ns);
  for (Eigen::Index c = 0; c < ns; ++c) {
    const auto& cm = cols[static_cast<std::size_t>(c)];
    cost_s[c] = p.c[cm.var] * cm.sign;
  }

  // Columns: structural | slack (one per row) | artificial (rows with rhs < 0).
  std::vector<Eigen::Index> negative_rows;
  for (Eigen::Index r = 0; r < m; ++r)
    if (rhs[r] < 0.0) negative_rows.push_back(r);
  const Eigen::Index first_art = ns + m;
  const Eigen::Index total = first_art + static_cast<Eigen::Index>(negative_rows.size());
  Tableau tab = Tableau::Zero(m, total + 1);
  std::vector<Eigen::Index> basis(static_cast<std::size_t>(m));
  for (Eigen::Index r = 0; r < m; ++r) {
    tab.row(r).head(ns) = a.row(r);
    tab(r, ns + r) = 1.0;
    tab(r, total) = rhs[r];
    basis[static_cast<std::size_t>(r)] = ns + r;
  }
  for (std::size_t k = 0; k < negative_rows.size(); ++k) {
    const Eigen::Index r = negative_rows[k];
    tab.row(r) *= -1.0;
    const Eigen::Index art = first_art + static_cast<Eigen::Index>(k);
    tab(r, art) = 1.0;
    basis[static_cast<std::size_t>(r)] = art;
  }

  DenseSimplex simplex(std::move(tab), std::move(basis), first_art);
  LPSolution out;

  if (!negative_rows.empty()) {
    Vector phase1 = Vector::Zero(total);
    phase1.tail(total - first_art).setOnes();
    simplex.optimize(phase1, true);
    const Vector x1 = simplex.primal(total);
    const double infeasibility = x1.tail(total - first_art).sum();
    const double scale = std::max(1.0, rhs.cwiseAbs().maxCoeff());
    if (infeasibility > 1e-9 * scale) {
      out.status = LPStatus::Infeasible;
      out.pivots = simplex.pivots();
      return out;
    }
    simplex.expel_artificials();
  }

  Vector phase2 = Vector::Zero(total);
  phase2.head(ns) = cost_s;
  if (!simplex.optimize(phase2, false)) {
    out.status = LPStatus::Unbounded;
    out.pivots = simplex.pivots();
    return out;
  }

  const Vector xs = simplex.primal(ns);
  out.x = offset;
  for (Eigen::Index c = 0; c < ns; ++c) {
    const auto& cm = cols[static_cast<std::size_t>(c)];
    out.x[cm.var] += cm.sign * xs[c];
  }
  out.status = LPStatus::Optimal;
  out.objective = p.c.dot(out.x);
  out.pivots = simplex.pivots();
  return out;
}

}  // namespace fslib::numerics
