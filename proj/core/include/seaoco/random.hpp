#pragma once

#include <cstdint>
#include <limits>

namespace seaoco {

enum class Role : std::uint64_t { Env = 1, ExtraSample = 2, Coins = 3, Pool = 4 };

std::uint64_t splitmix64(std::uint64_t x);

/// Counter-based generator. The stream is a pure function of
/// (seed, episode, role) and the number of draws taken so far, so episodes can
/// be run in any order or in parallel.
class Stream {
 public:
  using result_type = std::uint64_t;

  Stream(std::uint64_t seed, std::uint64_t episode, Role role);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  /// Uniform index in [0, n).
  std::uint64_t below(std::uint64_t n);
  /// +1 or -1 with equal probability.
  double rademacher();

  std::uint64_t draws() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace seaoco
