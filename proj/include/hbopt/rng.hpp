#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

namespace hbopt {

// Self-contained splitmix64 generator. Runs must be bit-reproducible for a
// given seed, so no std::*_distribution (implementation-defined streams).
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // uniform in [0, 1)
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // uniform in [0, n), n > 0; rejection keeps the draw unbiased
  int uniform_int(int n) {
    const uint64_t un = static_cast<uint64_t>(n);
    const uint64_t limit = UINT64_MAX - UINT64_MAX % un;
    uint64_t x;
    do {
      x = next_u64();
    } while (x >= limit);
    return static_cast<int>(x % un);
  }

  // standard normal via Marsaglia polar (no trig, portable libm surface)
  double normal() {
    for (;;) {
      const double u = 2.0 * uniform01() - 1.0;
      const double v = 2.0 * uniform01() - 1.0;
      const double s = u * u + v * v;
      if (s > 0.0 && s < 1.0) {
        return u * std::sqrt(-2.0 * std::log(s) / s);
      }
    }
  }

  // k distinct indices from [0, n), ascending (Floyd's sampling)
  std::vector<int> sample_without_replacement(int n, int k) {
    std::vector<int> out;
    out.reserve(static_cast<size_t>(k));
    for (int i = n - k; i < n; ++i) {
      const int j = uniform_int(i + 1);
      if (std::find(out.begin(), out.end(), j) != out.end()) {
        out.push_back(i);
      } else {
        out.push_back(j);
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  uint64_t state_;
};

}  // namespace hbopt
