#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <utility>

namespace tnbsd {

/// xoshiro256** generator seeded through SplitMix64 from (seed, stream).
/// Distinct streams of the same seed are statistically independent, which
/// lets parallel jobs derive their own generator from one user seed.
/// All helper distributions are implemented here so results do not depend
/// on the standard library's distribution algorithms.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() { return next(); }

  std::uint64_t next();
  /// Uniform double in [0, 1).
  double uniform();
  /// Uniform double in (0, 1].
  double uniform_pos() { return 1.0 - uniform(); }
  /// Uniform integer in [0, bound). bound must be > 0.
  std::uint64_t below(std::uint64_t bound);
  bool bernoulli(double p) { return uniform() < p; }
  double normal();
  /// Poisson variate; inversion for small means, normal approximation above 1e4.
  std::uint64_t poisson(double mean);

  template <class T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::uint64_t s_[4];
};

/// SplitMix64 finalizer, used to derive child seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace tnbsd
