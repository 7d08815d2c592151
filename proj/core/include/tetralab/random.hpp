#pragma once

#include <cstdint>

#include "tetralab/matcore.hpp"

namespace tetra {

/// SplitMix64 in counter mode: draw k of a stream with seed s is
/// mix(s + (k + 1) * 0x9E3779B97F4A7C15). Uniform doubles take the top 53
/// bits; normals use Box-Muller. Everything is defined here (not via
/// <random> distributions) so streams reproduce bit-for-bit across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) noexcept : seed_(seed) {}

  std::uint64_t next_u64() noexcept;
  double uniform() noexcept;  // [0, 1)
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
  std::uint64_t below(std::uint64_t n) noexcept;  // [0, n)
  double normal() noexcept;
  cplx complex_normal() noexcept;  // E|z|^2 = 1
  /// Uniform point of the disc of the given radius.
  cplx in_disc(double radius) noexcept;

  /// Independent stream derived from this seed and a stream id.
  Rng fork(std::uint64_t stream) const noexcept;

  std::uint64_t seed() const noexcept { return seed_; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

std::uint64_t splitmix64_mix(std::uint64_t z) noexcept;

CMatrix random_gaussian(Rng& rng, Index rows, Index cols);
/// Haar-distributed unitary via QR with phase correction.
CMatrix random_unitary(Rng& rng, Index n);

}  // namespace tetra
