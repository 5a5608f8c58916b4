#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>

namespace fslib {

/// Seeded generator whose derived draws are identical on every platform.
/// std::mt19937_64 output is fully specified by the standard, but the
/// std::*_distribution adaptors are not, so the draws are implemented here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  /// Uniform integer in [0, n), unbiased (rejection sampling).
  std::size_t index(std::size_t n);
  /// Standard normal (Marsaglia polar method).
  double normal();

  template <class T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1], items[index(i)]);
    }
  }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace fslib
