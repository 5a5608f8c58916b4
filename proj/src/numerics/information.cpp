#include "fslib/numerics/information.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace fslib::numerics {
namespace {

// Maps arbitrary ids onto 0..k-1 in order of first appearance.
std::vector<int> compact(std::span<const int> xs, int& levels) {
  std::map<int, int> ids;
  std::vector<int> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    auto [it, inserted] = ids.emplace(xs[i], static_cast<int>(ids.size()));
    out[i] = it->second;
  }
  levels = static_cast<int>(ids.size());
  return out;
}

}  // namespace

double entropy(std::span<const int> xs) {
  if (xs.empty()) return 0.0;
  int levels = 0;
  const auto cx = compact(xs, levels);
  std::vector<double> counts(static_cast<std::size_t>(levels), 0.0);
  for (int v : cx) counts[static_cast<std::size_t>(v)] += 1.0;
  const double n = static_cast<double>(xs.size());
  double h = 0.0;
  for (double c : counts) {
    const double p = c / n;
    h -= p * std::log2(p);
  }
  return h;
}

double mutual_information(std::span<const int> xs, std::span<const int> ys) {
  if (xs.size() != ys.size()) {
    throw ArgumentError("mutual_information: length mismatch " + std::to_string(xs.size()) + " vs " +
                        std::to_string(ys.size()));
  }
  if (xs.empty()) return 0.0;
  int kx = 0, ky = 0;
  const auto cx = compact(xs, kx);
  const auto cy = compact(ys, ky);
  const auto ux = static_cast<std::size_t>(kx);
  const auto uy = static_cast<std::size_t>(ky);
  std::vector<double> joint(ux * uy, 0.0), px(ux, 0.0), py(uy, 0.0);
  for (std::size_t i = 0; i < cx.size(); ++i) {
    const auto a = static_cast<std::size_t>(cx[i]);
    const auto b = static_cast<std::size_t>(cy[i]);
    joint[a * uy + b] += 1.0;
    px[a] += 1.0;
    py[b] += 1.0;
  }
  const double n = static_cast<double>(cx.size());
  double mi = 0.0;
  for (std::size_t a = 0; a < ux; ++a) {
    for (std::size_t b = 0; b < uy; ++b) {
      const double c = joint[a * uy + b];
      if (c == 0.0) continue;
      mi += (c / n) * std::log2(c * n / (px[a] * py[b]));
    }
  }
  return std::max(0.0, mi);
}

std::size_t default_bins(std::size_t samples) {
  const auto b = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(samples))));
  return std::clamp<std::size_t>(b, 2, 256);
}

int Discretizer::bin_of(std::size_t feature, double value) const {
  const auto& e = edges_.at(feature);
  return static_cast<int>(std::lower_bound(e.begin(), e.end(), value) - e.begin());
}

DiscreteData discretize(const DataMatrix& data, std::size_t bins) {
  if (bins < 2) throw ArgumentError("discretize: need at least 2 bins");
  const std::size_t t = data.samples();
  std::vector<std::vector<double>> all_edges(data.features());
  for (std::size_t j = 0; j < data.features(); ++j) {
    auto col = data.column(j);
    std::vector<double> sorted(col.begin(), col.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> uniq = sorted;
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
    const std::size_t b = std::min(bins, uniq.size());
    auto& edges = all_edges[j];
    for (std::size_t k = 1; k < b; ++k) {
      const std::size_t pos = (k * t + b - 1) / b;  // ceil(k T / B)
      const double e = sorted[pos - 1];
      if (e < sorted.back() && (edges.empty() || e > edges.back())) edges.push_back(e);
    }
  }
  DiscreteData out{std::vector<std::vector<int>>(data.features(), std::vector<int>(t)),
                   Discretizer(std::move(all_edges), bins)};
  for (std::size_t j = 0; j < data.features(); ++j) {
    auto col = data.column(j);
    for (std::size_t i = 0; i < t; ++i) {
      out.columns[j][i] = out.discretizer.bin_of(j, col[static_cast<Eigen::Index>(i)]);
    }
  }
  return out;
}

}  // namespace fslib::numerics
