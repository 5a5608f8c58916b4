#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fslib/core.hpp"
#include "fslib/dataset_io.hpp"
#include "fslib/errors.hpp"
#include "fslib/eval.hpp"
#include "fslib/registry.hpp"

namespace {

namespace fs = std::filesystem;
using namespace fslib;

enum ExitCode : int { kOk = 0, kInternal = 1, kArgument = 2, kData = 3, kNumerical = 4 };

struct InputOptions {
  std::string path;
  std::string format = "csv";
  std::string label_col = "last";
  bool header = false;
};

struct EvalOptions {
  std::string grid;
  std::size_t folds = 5;
  std::string classifier = "knn:3";
};

void add_input_options(CLI::App& cmd, InputOptions& in) {
  cmd.add_option("--input", in.path, "Dataset file")->required();
  cmd.add_option("--format", in.format, "csv or libsvm")->check(CLI::IsMember({"csv", "libsvm"}));
  cmd.add_option("--label-col", in.label_col, "last, none, or a 0-based column (csv)");
  cmd.add_flag("--header", in.header, "First csv line holds column names");
}

void add_eval_options(CLI::App& cmd, EvalOptions& ev) {
  cmd.add_option("--grid", ev.grid, "Comma-separated subset sizes m")->required();
  cmd.add_option("--folds", ev.folds, "Stratified folds")->check(CLI::PositiveNumber);
  cmd.add_option("--classifier", ev.classifier, "knn:K or svm:C");
}

io::Dataset load(const InputOptions& in) {
  const auto spec = io::LabelSpec::parse(in.label_col);
  if (in.format == "libsvm") {
    auto ds = io::load_libsvm(in.path);
    if (spec.kind == io::LabelSpec::Kind::NoLabels) ds.labels.reset();
    return ds;
  }
  return io::load_csv(in.path, spec, in.header);
}

std::vector<std::size_t> parse_grid(const std::string& text) {
  std::vector<std::size_t> grid;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    long long v = -1;
    try {
      v = std::stoll(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || v < 1) throw ArgumentError("grid entry '" + item + "' is not a positive integer");
    grid.push_back(static_cast<std::size_t>(v));
  }
  if (grid.empty()) throw ArgumentError("grid is empty");
  return grid;
}

const LabelVector& require_labels(const io::Dataset& ds, const std::string& what) {
  if (!ds.labels) throw ArgumentError(what + " requires labels");
  return *ds.labels;
}

std::vector<std::string> parse_methods(const std::string& text) {
  if (text == "all") return method_names();
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    describe_method(item);
    for (const auto& seen : out)
      if (seen == item) throw ArgumentError("method '" + item + "' listed twice");
    out.push_back(item);
  }
  if (out.empty()) throw ArgumentError("no methods given");
  return out;
}

std::string summary_table(const std::vector<eval::EvalReport>& reports) {
  std::ostringstream out;
  out << "method";
  for (auto m : reports.front().m_grid) out << "\tm=" << m;
  out << "\n";
  for (const auto& r : reports) {
    out << r.method;
    for (double acc : r.mean_accuracy) out << "\t" << io::format_double(acc);
    out << "\n";
  }
  return out.str();
}

std::string methods_table() {
  std::ostringstream out;
  out << "method\ttype\tclass\tcomplexity\tparams\n";
  for (const auto& m : list_methods()) {
    out << m.name << "\t" << fs_type_code(m.fs_type) << "\t" << fs_class_code(m.fs_class) << "\t" << m.complexity
        << "\t";
    const auto& keys = method_param_keys(m.name);
    for (std::size_t k = 0; k < keys.size(); ++k) out << (k ? "," : "") << keys[k];
    out << "\n";
  }
  return out.str();
}

int run(int argc, char** argv) {
  CLI::App app{"Feature ranking, selection and evaluation"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "fslib 0.1.0");

  InputOptions in;
  EvalOptions ev;
  std::string method, params_text, output, ranking_path, methods_text = "all";
  std::int64_t seed = 0;
  std::size_t top = 0;

  auto* rank = app.add_subcommand("rank", "Rank features and write a ranking document");
  rank->add_option("--method", method, "Method name")->required();
  add_input_options(*rank, in);
  rank->add_option("--params", params_text, "k=v,... method parameters");
  rank->add_option("--seed", seed, "Random seed")->check(CLI::NonNegativeNumber);
  rank->add_option("--output", output, "Ranking document path")->required();

  auto* select = app.add_subcommand("select", "Take the top m features of a ranking");
  select->add_option("--ranking", ranking_path, "Ranking document")->required();
  select->add_option("--top", top, "Subset size m")->required();
  select->add_option("--output", output, "Subset document path")->required();

  auto* evaluate = app.add_subcommand("eval", "Cross-validated accuracy over subset sizes");
  evaluate->add_option("--method", method, "Method name")->required();
  add_input_options(*evaluate, in);
  evaluate->add_option("--params", params_text, "k=v,... method parameters");
  add_eval_options(*evaluate, ev);
  evaluate->add_option("--seed", seed, "Random seed")->check(CLI::NonNegativeNumber);
  evaluate->add_option("--output", output, "Report path")->required();

  auto* bench = app.add_subcommand("bench", "Evaluate several methods and tabulate mean accuracy");
  bench->add_option("--methods", methods_text, "Comma-separated names, or all");
  add_input_options(*bench, in);
  add_eval_options(*bench, ev);
  bench->add_option("--seed", seed, "Random seed")->check(CLI::NonNegativeNumber);
  bench->add_option("--output", output, "Output directory")->required();

  app.add_subcommand("methods", "List the built-in methods");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kArgument;
  }

  const auto* cmd = app.get_subcommands().front();
  const std::string name = cmd->get_name();

  if (name == "methods") {
    std::cout << methods_table();
    return kOk;
  }

  if (name == "select") {
    const auto ranking = io::read_ranking(ranking_path);
    io::write_subset(select_top(ranking, top), ranking.method.name, output);
    return kOk;
  }

  const auto params = parse_param_list(params_text);
  if (name == "rank") {
    describe_method(method);
    const auto ds = load(in);
    const LabelVector* labels = ds.labels ? &*ds.labels : nullptr;
    io::write_ranking(run_method(method, ds.data, labels, params, seed), output);
    return kOk;
  }

  const auto grid = parse_grid(ev.grid);
  const auto classifier = eval::Classifier::parse(ev.classifier);
  if (name == "eval") {
    describe_method(method);
    const auto ds = load(in);
    const auto report = eval::accuracy_curve(ds.data, require_labels(ds, "eval"), method, params, grid, ev.folds,
                                             classifier, static_cast<std::uint64_t>(seed));
    io::write_text_atomic(output, eval::report_to_json(report));
    return kOk;
  }

  // bench
  const auto methods = parse_methods(methods_text);
  const auto ds = load(in);
  const auto& labels = require_labels(ds, "bench");
  std::vector<eval::EvalReport> reports;
  for (const auto& m : methods) {
    reports.push_back(eval::accuracy_curve(ds.data, labels, m, ParamMap{}, grid, ev.folds, classifier,
                                           static_cast<std::uint64_t>(seed)));
  }
  std::error_code ec;
  fs::create_directories(output, ec);
  if (ec) throw DataError("cannot create directory '" + output + "': " + ec.message());
  for (const auto& r : reports) io::write_text_atomic(fs::path(output) / (r.method + ".json"), eval::report_to_json(r));
  const auto table = summary_table(reports);
  io::write_text_atomic(fs::path(output) / "summary.tsv", table);
  std::cout << table;
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const fslib::ArgumentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kArgument;
  } catch (const fslib::DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kData;
  } catch (const fslib::NumericalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumerical;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}
