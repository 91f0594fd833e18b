#pragma once

#include <cstdint>
#include <random>

namespace sparqlkit::corruption {

/// Deterministic random source.
///
/// The engine output is fixed by the standard; the draws below are written
/// out by hand (the std distributions are implementation-defined), so a
/// seed produces the same stream on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Seed for the line at `index` of a batch seeded with `seed`. Parallel
  /// and serial drivers derive per-line generators through this.
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t index);

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, bound). `bound` must be positive.
  std::uint64_t below(std::uint64_t bound);

  /// Uniform real in [0, 1) with 53 random bits.
  double unit();

  /// True with probability `p`.
  bool bernoulli(double p) { return unit() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace sparqlkit::corruption
