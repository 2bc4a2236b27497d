#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <string_view>

namespace sizebias {

/// xoshiro256** generator seeded through SplitMix64.
///
/// All variate generation in the library goes through the member samplers
/// below rather than `<random>` distributions, so a given seed produces the
/// same stream on every platform and standard library.
///
/// Stream derivation: `Rng::derive(seed, label, stream)` hashes `label`
/// with FNV-1a, mixes it with `seed` and `stream` through SplitMix64, and
/// seeds a fresh generator from the result. Distinct (label, stream) pairs
/// give statistically independent sub-streams of one user seed.
class Rng {
 public:
  using result_type = std::uint64_t;

  static constexpr std::uint64_t kDefaultSeed = 0x5EEDB1A5ULL;

  explicit Rng(std::uint64_t seed = kDefaultSeed);

  static Rng derive(std::uint64_t seed, std::string_view label, std::uint64_t stream = 0);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on (0, 1].
  double uniform_open0();
  /// Uniform integer in [0, n); n must be positive.
  std::uint64_t below(std::uint64_t n);
  bool bernoulli(double p) { return uniform() < p; }
  double exponential();
  double normal();
  /// Gamma(shape, 1) by Marsaglia-Tsang; shape < 1 uses the boost U^(1/shape).
  double gamma(double shape);

 private:
  std::array<std::uint64_t, 4> state_{};
  bool has_spare_normal_ = false;
  double spare_normal_ = 0.0;
};

std::uint64_t splitmix64(std::uint64_t& state);

}  // namespace sizebias
