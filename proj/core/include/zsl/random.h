#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "zsl/problem.h"

namespace zsl {

// Portable sampling helpers on top of std::mt19937_64, whose output sequence
// is fixed by the standard. The distributions in <random> are not, so every
// draw used for data generation or index permutations goes through here.

// 53-bit uniform in [0, 1).
double uniform01(std::mt19937_64& rng);

// Uniform integer in [0, bound) by rejection; bound > 0.
std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t bound);

// Fisher-Yates from the back: for k = n-1 .. 1 swap v[k] with
// v[uniform_index(k + 1)].
void shuffle_indices(std::vector<Index>& v, std::mt19937_64& rng);

// Standard normal deviates by the Box-Muller transform. Each pair of
// uniforms (u1, u2) yields sqrt(-2 ln(1 - u1)) * cos(2 pi u2) followed by the
// matching sine term.
class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed) : rng_(seed) {}

  double next();
  double uniform() { return uniform01(rng_); }
  std::uint64_t index(std::uint64_t bound) { return uniform_index(rng_, bound); }
  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace zsl
