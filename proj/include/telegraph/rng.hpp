#pragma once

// Counter-based random streams. A stream is keyed by (seed, stream index) and
// its n-th output is a pure function of (key, n), so per-path streams give the
// same numbers no matter how paths are distributed across workers.

#include <cmath>
#include <cstdint>
#include <limits>

namespace telegraph {

inline constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class CounterStream {
 public:
  using result_type = std::uint64_t;

  CounterStream(std::uint64_t seed, std::uint64_t stream)
      : key_(mix64(mix64(seed ^ 0x6a09e667f3bcc908ULL) + stream * 0x9e3779b97f4a7c15ULL)) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() { return mix64(key_ + (++counter_) * 0x9e3779b97f4a7c15ULL); }

  /// Uniform on the open interval (0, 1).
  double uniform() { return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53; }

  /// Exponential(1) variate.
  double exponential() { return -std::log(uniform()); }

  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace telegraph
