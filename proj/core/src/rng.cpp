#include "mccfr/rng.hpp"

#include "mccfr/check.hpp"

namespace mccfr {

int Rng::index(std::span<const double> probs) {
  MCCFR_CHECK(!probs.empty());
  const double u = uniform();
  double acc = 0.0;
  int last_positive = -1;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] > 0.0) last_positive = static_cast<int>(i);
    acc += probs[i];
    if (u < acc) return static_cast<int>(i);
  }
  // Probabilities summed to slightly under 1; fall back to the last entry
  // that had any mass.
  MCCFR_CHECK_MSG(last_positive >= 0, "probability vector has no mass");
  return last_positive;
}

int Rng::below(int n) {
  MCCFR_CHECK(n > 0);
  return static_cast<int>(bits() % static_cast<std::uint64_t>(n));
}

namespace {
// FNV-1a over the stream name, then a splitmix64 finalizer to decorrelate
// nearby master seeds.
std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return h;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}
}  // namespace

std::uint64_t stream_seed(std::uint64_t master, std::string_view stream) {
  return splitmix64(master ^ fnv1a(stream));
}

}  // namespace mccfr
