#include "fslib/embedded.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "fslib/numerics/linear_svm.hpp"
#include "fslib/numerics/simplex.hpp"
#include "fslib/registry.hpp"

namespace fslib::embedded {
namespace {

void require_binary(const DataMatrix& data, const LabelVector& labels, const char* who) {
  require_valid(data, &labels);
  if (labels.num_classes() != 2) {
    throw ArgumentError(std::string(who) + " supports exactly 2 classes, got " +
                        std::to_string(labels.num_classes()));
  }
}

}  // namespace

FeatureRanking svm_rfe(const DataMatrix& data, const LabelVector& labels, const RfeParams& params) {
  require_binary(data, labels, "svmrfe");
  if (params.elim_fraction && !(*params.elim_fraction > 0.0 && *params.elim_fraction <= 1.0)) {
    throw ArgumentError("svmrfe: elim_fraction must be in (0, 1]");
  }
  const std::size_t n = data.features();
  const DataMatrix x = standardize(data);
  const Vector y = numerics::binary_signs(labels);

  std::vector<std::size_t> surviving(n);
  std::iota(surviving.begin(), surviving.end(), std::size_t{0});
  std::vector<std::size_t> eliminated;
  int rounds = 0;
  while (surviving.size() > 1) {
    const auto model = numerics::train_linear_svm(x.select_columns(surviving).values(), y, params.c_reg);
    ++rounds;
    // Positions into `surviving`, worst first: smallest w^2, and among equal
    // weights the higher index goes first so the reversed order keeps ties
    // in ascending index order.
    std::vector<std::size_t> pos(surviving.size());
    std::iota(pos.begin(), pos.end(), std::size_t{0});
    std::stable_sort(pos.begin(), pos.end(), [&](std::size_t a, std::size_t b) {
      const double wa = model.w[static_cast<Eigen::Index>(a)] * model.w[static_cast<Eigen::Index>(a)];
      const double wb = model.w[static_cast<Eigen::Index>(b)] * model.w[static_cast<Eigen::Index>(b)];
      return wa < wb || (wa == wb && surviving[a] > surviving[b]);
    });
    std::size_t batch = 1;
    if (params.elim_fraction) {
      batch = static_cast<std::size_t>(std::floor(*params.elim_fraction * static_cast<double>(surviving.size())));
    } else if (n > 200) {
      batch = surviving.size() / 2;
    }
    batch = std::clamp<std::size_t>(batch, 1, surviving.size());
    std::vector<bool> drop(surviving.size(), false);
    for (std::size_t k = 0; k < batch; ++k) {
      drop[pos[k]] = true;
      eliminated.push_back(surviving[pos[k]]);
    }
    std::vector<std::size_t> next;
    for (std::size_t k = 0; k < surviving.size(); ++k)
      if (!drop[k]) next.push_back(surviving[k]);
    surviving = std::move(next);
  }
  eliminated.insert(eliminated.end(), surviving.begin(), surviving.end());

  FeatureRanking ranking;
  ranking.order.assign(eliminated.rbegin(), eliminated.rend());
  ranking.scores = FeatureScores{std::vector<double>(n), Direction::HigherBetter};
  for (std::size_t k = 0; k < eliminated.size(); ++k) ranking.scores.values[eliminated[k]] = static_cast<double>(k);
  ranking.method = describe_method("svmrfe");
  ranking.method.params["C"] = format_number(params.c_reg);
  if (params.elim_fraction) ranking.method.params["elim_fraction"] = format_number(*params.elim_fraction);
  ranking.method.iterations = rounds;
  return ranking;
}

L0Trace l0_scaling(const DataMatrix& data, const LabelVector& labels, const L0Params& params) {
  require_binary(data, labels, "l0");
  if (params.max_iter < 1) throw ArgumentError("l0: max_iter must be >= 1");
  const Matrix x = standardize(data).values();
  const Vector y = numerics::binary_signs(labels);
  // tighter inner solves than the trainer default
  numerics::SvmOptions inner;
  inner.gap_tol = 1e-10;
  inner.max_epochs = 20000;
  L0Trace trace;
  trace.z = Vector::Ones(x.cols());
  for (int it = 0; it < params.max_iter; ++it) {
    const Matrix scaled = x * trace.z.asDiagonal();
    const auto model = numerics::train_linear_svm(scaled, y, params.c_reg, inner);
    Vector next = trace.z.cwiseProduct(model.w.cwiseAbs());
    const double floor = 1e-10 * next.maxCoeff();
    for (auto& v : next)
      if (v < floor) v = 0.0;  // pruned
    const double change = (next - trace.z).cwiseAbs().maxCoeff();
    trace.z = std::move(next);
    trace.scalings.push_back(trace.z);
    if (change < 1e-8) break;
  }
  return trace;
}

FeatureRanking l0_fs(const DataMatrix& data, const LabelVector& labels, const L0Params& params) {
  const auto trace = l0_scaling(data, labels, params);
  auto method = describe_method("l0");
  method.params["C"] = format_number(params.c_reg);
  method.params["max_iter"] = std::to_string(params.max_iter);
  method.iterations = static_cast<int>(trace.scalings.size());
  return ranking_from_scores(FeatureScores{std::vector<double>(trace.z.begin(), trace.z.end()), Direction::HigherBetter},
                             std::move(method));
}

double fsv_objective(const DataMatrix& data, const LabelVector& labels, const FsvParams& params,
                     const Vector& w, double gamma, const Vector& v) {
  const auto counts = labels.class_counts();
  const Vector s = data.values() * w;
  double loss_a = 0.0, loss_b = 0.0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const double si = s[static_cast<Eigen::Index>(i)];
    if (labels[i] == 0) {
      loss_a += std::max(0.0, -si + gamma + 1.0);
    } else {
      loss_b += std::max(0.0, si - gamma + 1.0);
    }
  }
  const double loss = loss_a / static_cast<double>(counts[0]) + loss_b / static_cast<double>(counts[1]);
  const double penalty = (1.0 - (-params.alpha * v.array()).exp()).sum();
  return (1.0 - params.lambda) * loss + params.lambda * penalty;
}

FsvTrace fsv_solve(const DataMatrix& data, const LabelVector& labels, const FsvParams& params) {
  require_binary(data, labels, "fsv");
  if (!(params.lambda > 0.0 && params.lambda < 1.0)) throw ArgumentError("fsv: lambda must be in (0, 1)");
  if (!(params.alpha > 0.0)) throw ArgumentError("fsv: alpha must be > 0");
  if (params.max_iter < 1) throw ArgumentError("fsv: max_iter must be >= 1");
  if (!(params.tol > 0.0)) throw ArgumentError("fsv: tol must be > 0");

  const auto counts = labels.class_counts();
  const auto n = static_cast<Eigen::Index>(data.features());
  const auto t = static_cast<Eigen::Index>(data.samples());
  const Matrix& x = data.values();

  // Variable layout: w (n, free) | gamma (free) | slack (T, >= 0) | v (n, >= 0).
  // Slack i belongs to row i: y for class 0 rows, z for class 1 rows.
  const Eigen::Index w0 = 0, g0 = n, s0 = n + 1, v0 = n + 1 + t;
  const Eigen::Index nvar = v0 + n;
  numerics::LPProblem lp;
  lp.a_ub = Matrix::Zero(t + 2 * n, nvar);
  lp.b_ub = Vector::Zero(t + 2 * n);
  lp.bounds.assign(static_cast<std::size_t>(nvar), numerics::VariableBound{});
  for (Eigen::Index j = 0; j <= n; ++j) lp.bounds[static_cast<std::size_t>(j)] = {-numerics::kInf, numerics::kInf};
  for (Eigen::Index i = 0; i < t; ++i) {
    const double side = labels[static_cast<std::size_t>(i)] == 0 ? -1.0 : 1.0;
    // class 0: -x w + gamma + 1 <= y ; class 1: x w - gamma + 1 <= z
    lp.a_ub.row(i).segment(w0, n) = side * x.row(i);
    lp.a_ub(i, g0) = -side;
    lp.a_ub(i, s0 + i) = -1.0;
    lp.b_ub[i] = -1.0;
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    lp.a_ub(t + 2 * j, w0 + j) = 1.0;  // w - v <= 0
    lp.a_ub(t + 2 * j, v0 + j) = -1.0;
    lp.a_ub(t + 2 * j + 1, w0 + j) = -1.0;  // -w - v <= 0
    lp.a_ub(t + 2 * j + 1, v0 + j) = -1.0;
  }
  lp.c = Vector::Zero(nvar);
  for (Eigen::Index i = 0; i < t; ++i) {
    const auto size = counts[static_cast<std::size_t>(labels[static_cast<std::size_t>(i)])];
    lp.c[s0 + i] = (1.0 - params.lambda) / static_cast<double>(size);
  }

  FsvTrace trace;
  Vector v = Vector::Ones(n);
  for (int it = 0; it < params.max_iter; ++it) {
    lp.c.segment(v0, n) = params.lambda * params.alpha * (-params.alpha * v.array()).exp();
    const auto sol = numerics::solve_lp(lp);
    if (sol.status != numerics::LPStatus::Optimal) {
      throw NumericalError(std::string("fsv: internal LP returned ") +
                           (sol.status == numerics::LPStatus::Infeasible ? "infeasible" : "unbounded"));
    }
    const Vector next = sol.x.segment(v0, n).cwiseMax(0.0);
    trace.w = sol.x.segment(w0, n);
    trace.gamma = sol.x[g0];
    trace.iterates.push_back(next);
    trace.objectives.push_back(fsv_objective(data, labels, params, trace.w, trace.gamma, next));
    trace.iterations = it + 1;
    const double change = (next - v).cwiseAbs().maxCoeff();
    v = next;
    if (change < params.tol) break;
  }
  trace.v = v;
  return trace;
}

FeatureRanking fsv_rank(const DataMatrix& data, const LabelVector& labels, const FsvParams& params) {
  const auto trace = fsv_solve(data, labels, params);
  auto method = describe_method("fsv");
  method.params["lambda"] = format_number(params.lambda);
  method.params["alpha"] = format_number(params.alpha);
  method.params["max_iter"] = std::to_string(params.max_iter);
  method.params["tol"] = format_number(params.tol);
  method.iterations = trace.iterations;
  return ranking_from_scores(FeatureScores{std::vector<double>(trace.v.begin(), trace.v.end()), Direction::HigherBetter},
                             std::move(method));
}

}  // namespace fslib::embedded
