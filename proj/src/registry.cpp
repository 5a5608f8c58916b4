#include "fslib/registry.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <set>

#include "fslib/embedded.hpp"
#include "fslib/filters.hpp"
#include "fslib/numerics/information.hpp"

namespace fslib {
namespace {

struct CatalogEntry {
  const char* name;
  FsType type;
  FsClass cls;
  const char* complexity;
  bool iterative;
  std::vector<std::string> keys;
};

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = {
      {"svmrfe", FsType::Embedded, FsClass::Supervised, "O(T^2 n log2 n)", true, {"C", "elim_fraction"}},
      {"inffs", FsType::Filter, FsClass::Unsupervised, "O(n^2.37 (1+T))", false, {"alpha"}},
      {"relieff", FsType::Filter, FsClass::Supervised, "O(i T n C)", true, {"k", "iterations", "standardize"}},
      {"fsv", FsType::Wrapper, FsClass::Supervised, "N/A", true, {"lambda", "alpha", "max_iter", "tol", "standardize"}},
      {"mutinf", FsType::Filter, FsClass::Supervised, "~O(n^2 T^2)", false, {"bins"}},
      {"mrmr", FsType::Filter, FsClass::Supervised, "O(n^3 T^2)", false, {"bins"}},
      {"fisher", FsType::Filter, FsClass::Supervised, "O(T n)", false, {}},
      {"laplacian", FsType::Filter, FsClass::Unsupervised, "N/A", false, {"k", "t", "standardize"}},
      {"mcfs", FsType::Filter, FsClass::Unsupervised, "N/A",  false,
       {"k", "t", "clusters", "lambda_frac", "standardize"}},
      {"l0", FsType::Wrapper, FsClass::Supervised, "N/A", true, {"C", "max_iter"}},
      {"ecfs", FsType::Filter, FsClass::Supervised, "O(T n + n^2)", false, {"alpha", "bins"}},
  };
  return entries;
}

const CatalogEntry& entry(const std::string& name) {
  for (const auto& e : catalog())
    if (name == e.name) return e;
  std::string known;
  for (const auto& e : catalog()) known += std::string(known.empty() ? "" : ", ") + e.name;
  throw ArgumentError("unknown method '" + name + "' (known: " + known + ")");
}

// Typed access to the user's params with canonical re-formatting.
class Params {
 public:
  Params(const std::string& method, const ParamMap& raw) : method_(method), raw_(raw) {
    const auto& keys = entry(method).keys;
    for (const auto& [k, v] : raw) {
      if (std::find(keys.begin(), keys.end(), k) == keys.end()) {
        std::string accepted;
        for (const auto& key : keys) accepted += std::string(accepted.empty() ? "" : ", ") + key;
        throw ArgumentError("unknown parameter '" + k + "' for method " + method +
                            (accepted.empty() ? " (it takes no parameters)" : " (accepted: " + accepted + ")"));
      }
    }
  }

  double real(const std::string& key, double fallback) {
    const auto it = raw_.find(key);
    double value = fallback;
    if (it != raw_.end()) value = parse_real(key, it->second);
    effective_[key] = format_number(value);
    return value;
  }

  std::size_t count(const std::string& key, std::size_t fallback) {
    const auto it = raw_.find(key);
    std::size_t value = fallback;
    if (it != raw_.end()) {
      const double d = parse_real(key, it->second);
      if (d < 0.0 || d != std::floor(d) || d > 1e9) {
        throw ArgumentError(method_ + ": parameter " + key + " must be a nonnegative integer");
      }
      value = static_cast<std::size_t>(d);
    }
    effective_[key] = std::to_string(value);
    return value;
  }

  bool flag(const std::string& key) {
    const auto it = raw_.find(key);
    bool value = false;
    if (it != raw_.end()) {
      const auto& s = it->second;
      if (s == "1" || s == "true" || s == "yes") value = true;
      else if (s == "0" || s == "false" || s == "no") value = false;
      else throw ArgumentError(method_ + ": parameter " + key + " must be true or false");
    }
    effective_[key] = value ? "true" : "false";
    return value;
  }

  std::optional<double> optional_real(const std::string& key, const char* unset_text) {
    const auto it = raw_.find(key);
    if (it == raw_.end() || it->second == unset_text) {
      effective_[key] = unset_text;
      return std::nullopt;
    }
    const double value = parse_real(key, it->second);
    effective_[key] = format_number(value);
    return value;
  }

  bool has(const std::string& key) const { return raw_.count(key) > 0; }
  const ParamMap& effective() const { return effective_; }

 private:
  double parse_real(const std::string& key, const std::string& text) const {
    double value = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (first != last && *first == '+') ++first;
    const auto res = std::from_chars(first, last, value);
    if (res.ec != std::errc() || res.ptr != last || !std::isfinite(value)) {
      throw ArgumentError(method_ + ": parameter " + key + "='" + text + "' is not a number");
    }
    return value;
  }

  std::string method_;
  const ParamMap& raw_;
  ParamMap effective_;
};

filters::GraphParams graph_params(Params& p) {
  filters::GraphParams g;
  g.k_neighbors = p.count("k", 5);
  g.heat_t = p.optional_real("t", "auto");
  return g;
}

}  // namespace

const std::vector<std::string>& method_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& e : catalog()) out.emplace_back(e.name);
    return out;
  }();
  return names;
}

MethodDescriptor describe_method(const std::string& name) {
  const auto& e = entry(name);
  return MethodDescriptor{e.name, e.type, e.cls, e.complexity, {}, std::nullopt};
}

std::vector<MethodDescriptor> list_methods() {
  std::vector<MethodDescriptor> out;
  for (const auto& e : catalog()) out.push_back(describe_method(e.name));
  return out;
}

const std::vector<std::string>& method_param_keys(const std::string& name) { return entry(name).keys; }

FeatureRanking run_method(const std::string& name, const DataMatrix& data, const LabelVector* labels,
                          const ParamMap& raw, std::int64_t seed) {
  const auto& e = entry(name);
  Params p(name, raw);
  if (e.cls == FsClass::Supervised && labels == nullptr) throw ArgumentError(name + " requires labels");
  require_valid(data, e.cls == FsClass::Supervised ? labels : nullptr);

  auto prepared = [&](bool standardize_flag) { return standardize_flag ? standardize(data) : data; };
  std::optional<std::int64_t> used_seed;
  FeatureScores scores;
  std::optional<int> iterations;

  if (name == "fisher") {
    scores = filters::fisher_score(data, *labels);
  } else if (name == "mutinf") {
    const auto bins = p.count("bins", numerics::default_bins(data.samples()));
    scores = filters::mutinf_fs(data, *labels, bins);
  } else if (name == "relieff") {
    filters::ReliefParams rp;
    rp.k = p.count("k", 10);
    rp.iterations = p.count("iterations", 0);
    const bool std_flag = p.flag("standardize");
    if (rp.iterations > 0) {
      rp.seed = static_cast<std::uint64_t>(seed);
      used_seed = seed;
    }
    scores = filters::relief_f(prepared(std_flag), *labels, rp);
    iterations = static_cast<int>(rp.iterations == 0 ? data.samples() : rp.iterations);
  } else if (name == "laplacian") {
    const auto g = graph_params(p);
    scores = filters::laplacian_score(prepared(p.flag("standardize")), g);
  } else if (name == "mcfs") {
    filters::McfsParams mp;
    mp.graph = graph_params(p);
    const std::size_t default_k = labels != nullptr && labels->num_classes() >= 2
                                      ? static_cast<std::size_t>(labels->num_classes())
                                      : 5;
    mp.clusters = p.count("clusters", default_k);
    mp.lambda_frac = p.real("lambda_frac", 0.01);
    scores = filters::mcfs_score(prepared(p.flag("standardize")), mp);
  } else if (name == "mrmr") {
    const auto bins = p.count("bins", numerics::default_bins(data.samples()));
    auto ranking = filters::mrmr_rank(data, *labels, bins);
    ranking.method.params = p.effective();
    return ranking;
  } else if (name == "inffs") {
    scores = filters::inf_fs(data, p.real("alpha", 0.5));
  } else if (name == "ecfs") {
    const double alpha = p.real("alpha", 0.5);
    const auto bins = p.count("bins", numerics::default_bins(data.samples()));
    scores = filters::ec_fs(data, *labels, alpha, bins);
  } else if (name == "svmrfe") {
    embedded::RfeParams rp;
    rp.c_reg = p.real("C", 1.0);
    rp.elim_fraction = p.optional_real("elim_fraction", "auto");
    auto ranking = embedded::svm_rfe(data, *labels, rp);
    ranking.method.params = p.effective();
    return ranking;
  } else if (name == "l0") {
    embedded::L0Params lp;
    lp.c_reg = p.real("C", 1.0);
    lp.max_iter = static_cast<int>(p.count("max_iter", 20));
    auto ranking = embedded::l0_fs(data, *labels, lp);
    ranking.method.params = p.effective();
    return ranking;
  } else if (name == "fsv") {
    embedded::FsvParams fp;
    fp.lambda = p.real("lambda", 0.5);
    fp.alpha = p.real("alpha", 5.0);
    fp.max_iter = static_cast<int>(p.count("max_iter", 50));
    fp.tol = p.real("tol", 1e-6);
    auto ranking = embedded::fsv_rank(prepared(p.flag("standardize")), *labels, fp);
    ranking.method.params = p.effective();
    return ranking;
  }

  auto method = describe_method(name);
  method.params = p.effective();
  method.iterations = iterations;
  return ranking_from_scores(std::move(scores), std::move(method), used_seed);
}

ParamMap parse_param_list(const std::string& text) {
  ParamMap out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = std::min(text.find(',', start), text.size());
    const std::string item = text.substr(start, end - start);
    if (!item.empty()) {
      const auto eq = item.find('=');
      if (eq == std::string::npos || eq == 0) throw ArgumentError("malformed parameter '" + item + "', expected key=value");
      const std::string key = item.substr(0, eq);
      if (out.count(key)) throw ArgumentError("parameter '" + key + "' given twice");
      out[key] = item.substr(eq + 1);
    }
    start = end + 1;
  }
  return out;
}

std::string format_number(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

}  // namespace fslib
