#include "zsl/random.h"

#include <cmath>
#include <numbers>
#include <utility>

namespace zsl {

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t bound) {
  // Largest multiple of bound that fits; draws above it are rejected.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return v % bound;
}

void shuffle_indices(std::vector<Index>& v, std::mt19937_64& rng) {
  for (std::size_t k = v.size(); k > 1; --k) {
    const std::size_t pick = uniform_index(rng, k);
    std::swap(v[k - 1], v[pick]);
  }
}

double NormalStream::next() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  const double u1 = 1.0 - uniform01(rng_);  // (0, 1]
  const double u2 = uniform01(rng_);
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  cached_ = radius * std::sin(angle);
  has_cached_ = true;
  return radius * std::cos(angle);
}

}  // namespace zsl
