// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "equivariance.hpp"
#include "fixtures.hpp"
#include "fslib/embedded.hpp"
#include "fslib/eval.hpp"
#include "fslib/filters.hpp"
#include "fslib/numerics/information.hpp"
#include "fslib/numerics/linear_svm.hpp"
#include "fslib/numerics/simplex.hpp"
#include "fslib/registry.hpp"
#include "lp_oracle.hpp"
#include "oracles.hpp"
#include "support.hpp"
#ifdef FSLIB_CLI_PATH
#include "cli_runner.hpp"
#endif

using namespace fslib;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), format, a, b, c);
  return buf;
}

std::size_t position(const std::vector<std::size_t>& order, std::size_t feature) {
  return static_cast<std::size_t>(std::find(order.begin(), order.end(), feature) - order.begin());
}

Outcome mi_oracle() {
  const auto start = Clock::now();
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed);
    const int classes = 2 + static_cast<int>(rng.index(3));
    std::vector<int> ids(50);
    for (std::size_t i = 0; i < 50; ++i) ids[i] = static_cast<int>(i % static_cast<std::size_t>(classes));
    rng.shuffle(std::span<int>(ids));
    const auto disc = numerics::discretize(testing::random_data(50, 8, 1000 + seed), 2 + rng.index(7));
    for (const auto& col : disc.columns) {
      worst = std::max(worst, std::abs(numerics::mutual_information(col, ids) - testing::brute_force_mi(col, ids)));
      worst = std::max(worst, std::abs(numerics::mutual_information(col, disc.columns[0]) -
                                       testing::brute_force_mi(col, disc.columns[0])));
    }
  }
  const double elapsed = seconds_since(start);
  return {worst <= 1e-12 && elapsed < 5.0, fmt("max |diff| %.2e over 100 datasets, %.2f s", worst, elapsed)};
}

Outcome inffs_series() {
  const auto start = Clock::now();
  double worst_short = 0.0, worst_pinned = 0.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(77 + seed);
    Matrix a(10, 10);
    for (Eigen::Index i = 0; i < 10; ++i)
      for (Eigen::Index j = i; j < 10; ++j) a(i, j) = a(j, i) = rng.uniform();
    const double rho = testing::spectral_radius(a);
    // 60 terms converge to far below 1e-8 at a contraction of one half
    const Vector s_short = filters::inf_fs_path_sums(a, 0.5 / rho);
    worst_short = std::max(worst_short, (s_short - testing::truncated_path_sums(a, 0.5 / rho, 60)).cwiseAbs().maxCoeff());
    // at the method's own r = 0.9 / rho the tail after 60 terms is ~1e-2, so
    // the series is carried until its tail is negligible
    const Vector s_pinned = filters::inf_fs_path_sums(a, 0.9 / rho);
    worst_pinned = std::max(worst_pinned, (s_pinned - testing::truncated_path_sums(a, 0.9 / rho, 400)).cwiseAbs().maxCoeff());
  }
  const double elapsed = seconds_since(start);
  return {worst_short <= 1e-8 && worst_pinned <= 1e-8 && elapsed < 5.0,
          fmt("max |diff| %.2e (r=0.5/rho, 60 terms), %.2e (r=0.9/rho, 400 terms), %.2f s", worst_short, worst_pinned,
              elapsed)};
}

Outcome ecfs_degeneracy() {
  int agree = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const int classes = seed < 10 ? 2 : 3;
    Rng rng(300 + seed);
    std::vector<double> shift(10);
    for (auto& s : shift) s = rng.uniform() * 1.5;
    const auto labels = testing::cyclic_labels(30, classes);
    const auto data = testing::shifted_data(labels, shift, 400 + seed);
    const auto ec = ranking_from_scores(filters::ec_fs(data, labels, 1.0), describe_method("ecfs"));
    const auto fi = ranking_from_scores(filters::fisher_score(data, labels), describe_method("fisher"));
    if (ec.order == fi.order) ++agree;
  }
  return {agree == 20, fmt("%.0f/20 datasets with identical order", agree)};
}

Outcome relief_trace() {
  filters::ReliefParams p;
  p.k = 1;
  const double w = filters::relief_f(testing::column({0, 0.1, 1.0, 1.1}), LabelVector({0, 0, 1, 1}), p).values[0];
  const bool rounds = std::round(w * 1e5) == 77273.0;
  return {std::abs(w - 17.0 / 22.0) <= 1e-6 && rounds,
          fmt("W = %.9f (exact trace 17/22 = %.9f, 5-digit rounding %.5f)", w, 17.0 / 22.0, std::round(w * 1e5) / 1e5)};
}

Outcome irrelevance_check() {
  const auto start = Clock::now();
  const std::vector<std::string> methods{"fisher", "mutinf", "relieff", "mrmr", "ecfs"};
  std::string detail;
  bool ok = true;
  for (const auto& m : methods) {
    int first = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto fx = eval::gen_irrelevant_pair(200, seed);
      if (run_method(m, fx.data, &fx.labels, {}, 0).order[0] == 0) ++first;
    }
    ok = ok && first == 20;
    detail += m + " " + std::to_string(first) + "/20, ";
  }
  const double elapsed = seconds_since(start);
  return {ok && elapsed < 30.0, detail + fmt("%.2f s", elapsed)};
}

Outcome redundancy_check() {
  int mrmr_ok = 0, fisher_ok = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto fx = eval::gen_redundant_with_weak(200, seed);
    const auto mr = run_method("mrmr", fx.data, &fx.labels);
    // columns 0 and 1 are the same feature; whichever copy comes second is the duplicate
    const std::size_t dup_pos = std::max(position(mr.order, 0), position(mr.order, 1));
    if (dup_pos > position(mr.order, 2)) ++mrmr_ok;
    const auto fi = run_method("fisher", fx.data, &fx.labels);
    if (position(fi.order, 0) < 2 && position(fi.order, 1) < 2) ++fisher_ok;
  }
  return {mrmr_ok == 20 && fisher_ok == 20,
          fmt("mrmr duplicate after weak feature %.0f/20, fisher duplicates in top 2 %.0f/20", mrmr_ok, fisher_ok)};
}

Outcome svmrfe_behavior() {
  const auto start = Clock::now();
  int hits = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto fx = eval::gen_informative(100, 2, 8, 3.0, seed);
    const auto r = run_method("svmrfe", fx.data, &fx.labels);
    std::vector<std::size_t> last_two{r.order[0], r.order[1]};
    std::sort(last_two.begin(), last_two.end());
    if (last_two == std::vector<std::size_t>{0, 1}) ++hits;
  }
  const double elapsed = seconds_since(start);
  return {hits >= 18 && elapsed < 60.0, fmt("informative pair eliminated last in %.0f/20 seeds, %.2f s", hits, elapsed)};
}

Outcome fsv_criteria() {
  bool monotone = true;
  int runs = 0;
  auto record = [&](const embedded::FsvTrace& t) {
    ++runs;
    for (std::size_t k = 1; k < t.objectives.size(); ++k)
      if (t.objectives[k] > t.objectives[k - 1] + 1e-9) monotone = false;
  };
  int concentrated = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto fx = eval::gen_informative(60, 1, 4, 4.0, seed);
    const auto t = embedded::fsv_solve(fx.data, fx.labels);
    record(t);
    if (t.v.sum() > 0.0 && t.v[0] >= 0.9 * t.v.sum()) ++concentrated;
  }
  record(embedded::fsv_solve(testing::column({-1, -1, 1, 1}), LabelVector({0, 0, 1, 1})));
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto fx = eval::gen_informative(40, 2, 6, 1.0, 50 + seed);
    record(embedded::fsv_solve(fx.data, fx.labels));
  }

  double lp_worst = 0.0;
  int lp_count = 0;
  bool lp_ok = true;
  for (const auto& lp : testing::bundled_lps()) {
    ++lp_count;
    const auto sol = numerics::solve_lp(lp.problem);
    const auto oracle = testing::vertex_enumeration_min(lp.problem);
    if (!oracle) {
      lp_ok = lp_ok && sol.status == numerics::LPStatus::Infeasible;
      continue;
    }
    if (sol.status != numerics::LPStatus::Optimal) {
      lp_ok = false;
      continue;
    }
    lp_worst = std::max({lp_worst, std::abs(sol.objective - *oracle), testing::max_violation(lp.problem, sol.x)});
  }
  lp_ok = lp_ok && lp_worst <= 1e-8;
  return {monotone && concentrated >= 18 && lp_ok,
          std::string(monotone ? "objective non-increasing" : "objective INCREASED") + " on " + std::to_string(runs) +
              " runs; 90% concentration in " + std::to_string(concentrated) + "/20 seeds; " +
              std::to_string(lp_count) + " bundled LPs " + (lp_ok ? "match" : "DIFFER from") +
              " vertex enumeration" + fmt(" (max err %.1e)", lp_worst)};
}

Outcome svm_criteria() {
  double worst = 0.0;
  for (const auto& toy : testing::svm_toys()) {
    const auto model = numerics::train_linear_svm(toy.x, toy.y, toy.c_reg);
    const double mine = numerics::svm_primal_objective(toy.x, toy.y, model.w, model.b, toy.c_reg);
    const double oracle = testing::svm_grid_oracle(toy.x, toy.y, toy.c_reg);
    worst = std::max(worst, std::abs(mine - oracle) / std::max(1.0, oracle));
  }
  const auto sep = testing::separable_toy();
  const auto model = numerics::train_linear_svm(sep.x, sep.y, sep.c_reg);
  const double hinge = testing::hinge_sum(sep.x, sep.y, model.w, model.b);
  return {worst <= 1e-4 && hinge == 0.0,
          fmt("max relative gap to grid oracle %.2e on %.0f toys; separable hinge loss %.17g", worst,
              static_cast<double>(testing::svm_toys().size()), hinge)};
}

Outcome fisher_scaling() {
  const auto start = Clock::now();
  const auto labels = testing::cyclic_labels(500, 2);
  const auto small = testing::random_data(500, 1000, 1);
  const auto large = testing::random_data(500, 2000, 2);
  auto timed = [&](const DataMatrix& d) {
    const auto t0 = Clock::now();
    const auto s = filters::fisher_score(d, labels);
    const double dt = seconds_since(t0);
    return s.values.empty() ? -1.0 : dt;
  };
  timed(small);
  timed(large);
  // alternate the two sizes so drift in machine load hits both alike
  std::vector<double> ts, tl;
  for (int run = 0; run < 5; ++run) {
    ts.push_back(timed(small));
    tl.push_back(timed(large));
  }
  std::sort(ts.begin(), ts.end());
  std::sort(tl.begin(), tl.end());
  const double t1 = ts[2], t2 = tl[2];
  const double elapsed = seconds_since(start);
  return {t2 <= 3.0 * t1 && elapsed < 60.0,
          fmt("median %.2f ms (n=1000) vs %.2f ms (n=2000), ratio %.2f", 1e3 * t1, 1e3 * t2, t2 / t1)};
}

Outcome cli_determinism() {
#ifdef FSLIB_CLI_PATH
  namespace fs = std::filesystem;
  const auto dir = testing::fresh_dir("fslib_acceptance_cli");
  testing::write_csv(dir / "data.csv", eval::gen_informative(60, 2, 4, 2.0, 11));
  std::vector<std::pair<std::string, std::vector<std::string>>> commands;
  for (const auto& m : method_names()) {
    std::vector<std::string> args{"rank", "--method", m, "--input", "data.csv", "--seed", "5"};
    if (m == "relieff") args.insert(args.end(), {"--params", "iterations=25"});
    commands.push_back({"rank " + m, args});
  }
  commands.push_back({"select", {"select", "--ranking", "rank_fisher.json", "--top", "3"}});
  commands.push_back({"eval", {"eval", "--method", "relieff", "--input", "data.csv", "--params", "iterations=30",
                               "--grid", "1,2,4", "--seed", "9"}});
  commands.push_back({"bench", {"bench", "--methods", "all", "--input", "data.csv", "--grid", "1,3", "--folds", "3"}});
  commands.push_back({"methods", {"methods"}});

  auto collect = [&](const fs::path& p) {
    if (!fs::exists(p)) return std::string();
    if (!fs::is_directory(p)) return testing::slurp(p);
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(p)) files.push_back(e.path());
    std::sort(files.begin(), files.end());
    std::string all;
    for (const auto& f : files) all += f.filename().string() + "\n" + testing::slurp(f);
    return all;
  };

  int identical = 0;
  std::string failed;
  for (const auto& [label, base] : commands) {
    std::string first;
    bool same = true;
    for (int round = 0; round < 2; ++round) {
      auto args = base;
      std::string out;
      if (label != "methods") {
        out = label.rfind("rank ", 0) == 0 ? "rank_" + label.substr(5) + ".json" : label + "_" + std::to_string(round);
        if (label.rfind("rank ", 0) == 0 && round == 1) out = "again_" + out;
        args.insert(args.end(), {"--output", out});
      }
      const auto r = testing::run_cli(dir, args);
      const std::string blob = std::to_string(r.code) + "\n" + r.out + "\n" + r.err + "\n" + collect(dir / out);
      if (r.code != 0) same = false;
      if (round == 0) first = blob;
      else same = same && blob == first;
    }
    if (same) ++identical;
    else failed += " " + label;
  }
  const auto total = static_cast<double>(commands.size());
  return {identical == static_cast<int>(commands.size()),
          fmt("%.0f/%.0f invocations byte-identical across two runs", identical, total) +
              (failed.empty() ? "" : "; differing:" + failed)};
#else
  return {false, "CLI not built"};
#endif
}

Outcome permutation_equivariance() {
  const auto fx = testing::equivariance_fixture(2024);
  const auto perms = testing::test_permutations(8);
  int passed = 0, total = 0;
  std::string failed;
  for (const auto& m : method_names()) {
    for (const auto& perm : perms) {
      ++total;
      const auto res = testing::check_permutation(m, fx.data, fx.labels, perm);
      if (res.ok) ++passed;
      else failed += " [" + res.detail + "]";
    }
  }
  return {passed == total, fmt("%.0f/%.0f method-permutation pairs (mrmr as greedy traces)", passed, total) + failed};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"oracle-mi", mi_oracle},
      {"oracle-inffs-series", inffs_series},
      {"ecfs-degeneracy", ecfs_degeneracy},
      {"relieff-hand-trace", relief_trace},
      {"irrelevance", irrelevance_check},
      {"redundancy", redundancy_check},
      {"svmrfe-behavior", svmrfe_behavior},
      {"fsv", fsv_criteria},
      {"linear-svm", svm_criteria},
      {"fisher-scaling", fisher_scaling},
      {"cli-determinism", cli_determinism},
      {"permutation-equivariance", permutation_equivariance},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("%s  %-26s %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu criteria, %d failed\n", criteria.size(), failures);
  return failures == 0 ? 0 : 1;
}
