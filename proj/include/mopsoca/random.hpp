// Seeded random streams with library-independent draws.

#ifndef MOPSOCA_RANDOM_HPP
#define MOPSOCA_RANDOM_HPP

#include <cstddef>
#include <cstdint>
#include <random>

namespace mopsoca {

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Seed for an agent's private stream at a given iteration.
constexpr std::uint64_t child_seed(std::uint64_t run_seed, std::uint64_t agent_id,
                                   std::uint64_t iteration) {
  return mix64(mix64(mix64(run_seed) ^ agent_id) ^ (iteration * 0x632be59bd9b4e019ULL));
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(mix64(seed)) {}

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform in [lo, hi); returns lo when the range is collapsed.
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform index in [0, n).
  std::size_t index(std::size_t n) {
    const auto i = static_cast<std::size_t>(uniform() * static_cast<double>(n));
    return i < n ? i : n - 1;
  }

  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace mopsoca

#endif  // MOPSOCA_RANDOM_HPP
