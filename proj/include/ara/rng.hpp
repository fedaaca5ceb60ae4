#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace ara {

// Seeded PRNG with a fully specified output sequence.
//
// The engine is std::mt19937_64, whose output is fixed by the standard. The
// distribution helpers below are written out explicitly instead of using
// <random> distributions, whose algorithms are implementation-defined:
//   uniform01(): (next() >> 11) * 2^-53, in [0, 1)
//   index(n):    next() % n
//   normal():    Box-Muller, u1 = 1 - uniform01(), u2 = uniform01(),
//                returns sqrt(-2 ln u1) * cos(2 pi u2) (the sine branch is discarded)
class Rng
{
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  std::size_t index(std::size_t n) { return static_cast<std::size_t>(next() % n); }

  double normal()
  {
    const double u1 = 1.0 - uniform01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  double normal(double mean, double sigma) { return mean + sigma * normal(); }

private:
  std::mt19937_64 engine_;
};

}  // namespace ara
