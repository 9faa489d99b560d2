#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace logdamp::cli {

// Uniform draws built from raw mt19937_64 output, so a seed gives the same
// stream on every standard library (std distributions are not portable).
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
  double log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
  }
  std::uint64_t bits() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace logdamp::cli
