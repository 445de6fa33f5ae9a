#ifndef TREECLUST_RNG_HPP
#define TREECLUST_RNG_HPP

#include <cmath>
#include <cstdint>

namespace treeclust {

// SplitMix64. Fixed here (rather than std::mt19937 etc.) so generated
// datasets are byte-identical across platforms and reimplementations.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  // Box-Muller; one draw per call, the pair's second half is cached.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = next_double();
    double u2 = next_double();
    while (u1 == 0.0) u1 = next_double();
    double mag = std::sqrt(-2.0 * std::log(u1));
    double ang = 2.0 * 3.141592653589793 * u2;
    spare_ = mag * std::sin(ang);
    have_spare_ = true;
    return mag * std::cos(ang);
  }

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace treeclust

#endif
