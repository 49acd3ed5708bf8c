#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <optional>

namespace bayesev {

/// xoshiro256** seeded through splitmix64.
///
/// The generator and every derived variate are implemented here rather than
/// through <random> distributions, so streams are identical across standard
/// libraries. Run r of an experiment with seed s uses `Rng::stream(s, r)`.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed);

  static Rng stream(std::uint64_t seed, std::uint64_t run_index) {
    return Rng(seed + run_index);
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on (0, 1).
  double uniform_open();
  /// Standard normal via Box-Muller; the second variate of each pair is cached.
  double normal();

 private:
  std::array<std::uint64_t, 4> state_{};
  std::optional<double> spare_normal_;
};

}  // namespace bayesev
