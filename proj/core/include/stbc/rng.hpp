#pragma once

// Counter-based random streams. A stream is fully determined by a seed and
// up to three counters (e.g. SNR index and trial index), so any worker can
// regenerate trial k without touching shared state.

#include <complex>
#include <cstdint>

namespace stbc {

std::uint64_t splitmix64(std::uint64_t x);

/// Hash of (seed, a, b, c) used as the initial state of a stream.
std::uint64_t stream_key(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0);

class Rng {
 public:
  explicit Rng(std::uint64_t state) : state_(state) {}
  Rng(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0) : state_(stream_key(seed, a, b, c)) {}

  std::uint64_t next();
  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  /// Uniform integer in [lo, hi].
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
  /// Standard normal via Box-Muller.
  double normal();
  /// Circularly symmetric complex Gaussian with E|z|² = 1.
  std::complex<double> complex_normal();

 private:
  std::uint64_t state_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace stbc
