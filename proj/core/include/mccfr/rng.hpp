#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>

namespace mccfr {

// Deterministic random source. Wraps mt19937_64 but fixes the bit-to-double and
// discrete-sampling conversions so results do not depend on the standard
// library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t bits() { return gen_(); }

  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Index into a probability vector (entries >= 0, summing to ~1). Walks the
  // CDF; numerical slack falls through to the last positive entry.
  int index(std::span<const double> probs);

  // Uniform integer in [0, n).
  int below(int n);

 private:
  std::mt19937_64 gen_;
};

// Derives the seed for a named substream of a master seed. Different stream
// names give statistically independent sequences, so consuming draws on one
// stream never perturbs another.
std::uint64_t stream_seed(std::uint64_t master, std::string_view stream);

}  // namespace mccfr
