#include "rejectron/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace rejectron {

std::uint64_t splitmix64(std::uint64_t x) {
  std::uint64_t z = x + 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  return splitmix64(base + index * 0x9e3779b97f4a7c15ull);
}

SeededRng::SeededRng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

std::uint64_t SeededRng::next_u64() { return engine_(); }

double SeededRng::next_unit() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t SeededRng::next_below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("next_below requires n > 0");
  const std::uint64_t threshold = (0 - n) % n;
  for (;;) {
    const std::uint64_t r = next_u64();
    if (r >= threshold) return r % n;
  }
}

bool SeededRng::bernoulli(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("bernoulli probability outside [0, 1]");
  return next_unit() < p;
}

}
