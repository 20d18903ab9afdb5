#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace testutil {

// generator for randomized property instances; all draws are derived from the
// top bits so instances are identical across platforms
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : rng_(seed) {}

  double unit() { return (rng_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
  double log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
  }
  int integer(int lo, int hi) {  // inclusive
    return lo + static_cast<int>(rng_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  std::uint64_t raw() { return rng_(); }

 private:
  std::mt19937_64 rng_;
};

inline bool rel_close(double a, double b, double tol) {
  return std::fabs(a - b) <= tol * std::max(std::fabs(a), std::fabs(b));
}

}  // namespace testutil
