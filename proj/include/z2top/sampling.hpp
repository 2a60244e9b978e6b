#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace z2top {

/// Reproducible uniform draws on [lo, hi). The 53-bit mapping is spelled out
/// so results do not depend on the standard library's distribution code.
class UniformSampler {
 public:
  explicit UniformSampler(std::uint64_t seed) : engine_(seed) {}

  double next(double lo, double hi) {
    const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }

  std::vector<double> vector(std::size_t dim, double lo, double hi) {
    std::vector<double> v(dim);
    for (double& x : v) x = next(lo, hi);
    return v;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace z2top
