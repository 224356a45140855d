#ifndef REJECTRON_RNG_HPP
#define REJECTRON_RNG_HPP

#include <cstdint>
#include <random>

namespace rejectron {

// splitmix64 output mix; used for seed spreading and stream derivation
std::uint64_t splitmix64(std::uint64_t x);

// seed for an indexed substream: the (index+1)-th splitmix64 output of base
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

// deterministic generator with portable mappings on top of mt19937_64;
// the raw engine sequence is fixed by the standard, and the mappings below
// avoid std distributions, which vary across implementations
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed);

  std::uint64_t next_u64();

  // uniform double in [0, 1) with 53 random bits
  double next_unit();

  // uniform integer in [0, n); n must be positive
  std::uint64_t next_below(std::uint64_t n);

  // consumes exactly one next_unit draw; p must lie in [0, 1]
  bool bernoulli(double p);

 private:
  std::mt19937_64 engine_;
};

}

#endif
