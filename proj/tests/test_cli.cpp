#include <doctest.h>

#include <filesystem>

#include "cli_runner.hpp"
#include "fslib/registry.hpp"

using namespace fslib;
using fslib::testing::run_cli;
using fslib::testing::slurp;
namespace fs = std::filesystem;

namespace {

fs::path prepared_dir(const std::string& name) {
  const auto dir = fslib::testing::fresh_dir(name);
  fslib::testing::write_fisher_toy(dir / "toy.csv");
  fslib::testing::write_csv(dir / "data.csv", eval::gen_informative(60, 2, 4, 2.0, 5));
  return dir;
}

void check_failure(const fslib::testing::CliResult& r, int code) {
  CHECK(r.code == code);
  CHECK(r.out.empty());
  CHECK_FALSE(r.err.empty());
}

}  // namespace

TEST_CASE("rank on the fisher toy") {
  const auto dir = prepared_dir("fslib_cli_rank");
  const auto r = run_cli(dir, {"rank", "--method", "fisher", "--input", "toy.csv", "--label-col", "last", "--output", "r.out"});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  const auto doc = io::read_ranking(dir / "r.out");
  CHECK(doc.order == std::vector<std::size_t>{1, 0});
  CHECK(doc.scores.values == std::vector<double>{0.0, 4.0});
  CHECK(doc.method.name == "fisher");
  CHECK_FALSE(doc.seed);
}

TEST_CASE("rank without labels on a supervised method") {
  const auto dir = prepared_dir("fslib_cli_nolabels");
  const auto r = run_cli(dir, {"rank", "--method", "fisher", "--input", "toy.csv", "--label-col", "none", "--output", "r.out"});
  check_failure(r, 2);
  CHECK(r.err.find("fisher requires labels") != std::string::npos);
  CHECK_FALSE(fs::exists(dir / "r.out"));
}

TEST_CASE("select writes a subset and rejects m = 0") {
  const auto dir = prepared_dir("fslib_cli_select");
  REQUIRE(run_cli(dir, {"rank", "--method", "fisher", "--input", "toy.csv", "--output", "r.out"}).code == 0);
  check_failure(run_cli(dir, {"select", "--ranking", "r.out", "--top", "0", "--output", "s.json"}), 2);
  REQUIRE(run_cli(dir, {"select", "--ranking", "r.out", "--top", "1", "--output", "s.json"}).code == 0);
  CHECK(slurp(dir / "s.json") == "{\n  \"method\": \"fisher\",\n  \"m\": 1,\n  \"indices\": [1]\n}\n");
}

TEST_CASE("argument errors exit with 2") {
  const auto dir = prepared_dir("fslib_cli_args");
  check_failure(run_cli(dir, {}), 2);
  check_failure(run_cli(dir, {"rank", "--method", "nope", "--input", "toy.csv", "--output", "o"}), 2);
  check_failure(run_cli(dir, {"rank", "--method", "fisher", "--input", "toy.csv", "--params", "k=3", "--output", "o"}), 2);
  check_failure(run_cli(dir, {"rank", "--method", "relieff", "--input", "toy.csv", "--params", "k=x", "--output", "o"}), 2);
  check_failure(run_cli(dir, {"rank", "--method", "fisher", "--input", "toy.csv"}), 2);
  check_failure(run_cli(dir, {"rank", "--method", "fisher", "--input", "toy.csv", "--format", "xml", "--output", "o"}), 2);
  check_failure(run_cli(dir, {"eval", "--method", "fisher", "--input", "data.csv", "--grid", "1,0", "--output", "o"}), 2);
  check_failure(run_cli(dir, {"eval", "--method", "fisher", "--input", "data.csv", "--grid", "1", "--classifier", "tree", "--output", "o"}), 2);
  check_failure(run_cli(dir, {"bench", "--methods", "fisher,bogus", "--input", "data.csv", "--grid", "1", "--output", "b"}), 2);
  CHECK_FALSE(fs::exists(dir / "o"));
}

TEST_CASE("data errors exit with 3") {
  const auto dir = prepared_dir("fslib_cli_data");
  io::write_text_atomic(dir / "bad.csv", "1,2,0\n3,x,1\n");
  io::write_text_atomic(dir / "ragged.csv", "1,2,0\n3,1\n");
  io::write_text_atomic(dir / "nan.csv", "1,nan,0\n3,1,1\n4,4,0\n5,5,1\n");
  check_failure(run_cli(dir, {"rank", "--method", "fisher", "--input", "bad.csv", "--output", "o"}), 3);
  check_failure(run_cli(dir, {"rank", "--method", "fisher", "--input", "ragged.csv", "--output", "o"}), 3);
  check_failure(run_cli(dir, {"rank", "--method", "fisher", "--input", "nan.csv", "--output", "o"}), 3);
  check_failure(run_cli(dir, {"rank", "--method", "fisher", "--input", "missing.csv", "--output", "o"}), 3);
  check_failure(run_cli(dir, {"rank", "--method", "fisher", "--input", "toy.csv", "--output", "no/such/dir/o"}), 3);
  check_failure(run_cli(dir, {"select", "--ranking", "toy.csv", "--top", "1", "--output", "o"}), 3);
}

TEST_CASE("numerical failures exit with 4") {
  const auto dir = prepared_dir("fslib_cli_numerical");
  // a vanishing heat-kernel bandwidth isolates every node of the graph
  check_failure(run_cli(dir, {"rank", "--method", "mcfs", "--input", "data.csv", "--params", "t=1e-300", "--output", "o"}), 4);
}

TEST_CASE("libsvm input") {
  const auto dir = prepared_dir("fslib_cli_libsvm");
  io::write_text_atomic(dir / "toy.svm", "-1 2:0\n-1 1:2 2:2\n+1 2:4\n+1 1:2 2:6\n");
  REQUIRE(run_cli(dir, {"rank", "--method", "fisher", "--input", "toy.svm", "--format", "libsvm", "--output", "a"}).code == 0);
  REQUIRE(run_cli(dir, {"rank", "--method", "fisher", "--input", "toy.csv", "--output", "b"}).code == 0);
  CHECK(slurp(dir / "a") == slurp(dir / "b"));
}

TEST_CASE("eval writes a report") {
  const auto dir = prepared_dir("fslib_cli_eval");
  const auto r = run_cli(dir, {"eval", "--method", "fisher", "--input", "data.csv", "--grid", "1,2,6", "--folds", "5",
                               "--classifier", "knn:3", "--seed", "4", "--output", "e.json"});
  REQUIRE(r.code == 0);
  const auto text = slurp(dir / "e.json");
  CHECK(text.find("\"grid\": [1, 2, 6]") != std::string::npos);
  CHECK(text.find("\"seed\": 4") != std::string::npos);
}

TEST_CASE("bench over all methods") {
  const auto dir = prepared_dir("fslib_cli_bench");
  const auto r = run_cli(dir, {"bench", "--methods", "all", "--input", "data.csv", "--grid", "2,1", "--folds", "3", "--output", "out"});
  REQUIRE(r.code == 0);
  const auto summary = slurp(dir / "out" / "summary.tsv");
  CHECK(r.out == summary);
  std::istringstream lines(summary);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "method\tm=1\tm=2");
  std::vector<std::string> names;
  while (std::getline(lines, line)) names.push_back(line.substr(0, line.find('\t')));
  CHECK(names == method_names());
  for (const auto& m : method_names()) CHECK(fs::exists(dir / "out" / (m + ".json")));
}

TEST_CASE("every subcommand is byte-for-byte deterministic") {
  const auto dir = prepared_dir("fslib_cli_determinism");
  const std::vector<std::vector<std::string>> commands = {
      {"rank", "--method", "relieff", "--input", "data.csv", "--params", "iterations=20", "--seed", "3", "--output", "OUT"},
      {"eval", "--method", "mrmr", "--input", "data.csv", "--grid", "1,3", "--seed", "2", "--output", "OUT"},
      {"bench", "--methods", "fisher,svmrfe,inffs", "--input", "data.csv", "--grid", "1,2", "--output", "OUT"},
  };
  for (const auto& base : commands) {
    std::vector<std::string> outputs;
    std::vector<std::string> streams;
    for (const std::string tag : {"a", "b"}) {
      auto args = base;
      args.back() = "out_" + args[0] + "_" + tag;
      const auto r = run_cli(dir, args);
      REQUIRE(r.code == 0);
      streams.push_back(r.out);
      const fs::path p = dir / args.back();
      if (fs::is_directory(p)) {
        std::string all;
        for (const auto& m : {"fisher", "svmrfe", "inffs"}) all += slurp(p / (std::string(m) + ".json"));
        outputs.push_back(all + slurp(p / "summary.tsv"));
      } else {
        outputs.push_back(slurp(p));
      }
    }
    CAPTURE(base[0]);
    CHECK(outputs[0] == outputs[1]);
    CHECK(streams[0] == streams[1]);
  }
}
