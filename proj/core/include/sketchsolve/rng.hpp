#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace sketchsolve {

/// Reproducible pseudorandom stream.
///
/// Generator: xoshiro256** (Blackman & Vigna). The 256-bit state is filled by
/// four SplitMix64 outputs seeded from a 64-bit key. The key of the root
/// stream is the user seed; the key of substream i is
/// splitmix64(key ^ splitmix64(i + 0x632be59bd9b4e019)), so a tree of
/// independent streams can be derived up front without sharing state.
///
/// Gaussian draws use the Marsaglia polar method with one cached deviate;
/// uniform draws use the top 53 bits. Everything is specified here, so
/// sequences do not depend on the standard library's distributions.
class RngStream {
 public:
  using result_type = std::uint64_t;

  explicit RngStream(std::uint64_t seed);
  RngStream(std::uint64_t seed, std::uint64_t stream_index);

  RngStream substream(std::uint64_t index) const;

  std::uint64_t key() const noexcept { return key_; }

  std::uint64_t next_u64() noexcept;
  std::uint64_t operator()() noexcept { return next_u64(); }
  static constexpr std::uint64_t min() { return 0; }
  static constexpr std::uint64_t max() { return std::numeric_limits<std::uint64_t>::max(); }

  /// Uniform on [0, 1).
  double uniform() noexcept;
  /// Standard normal.
  double normal() noexcept;
  /// Uniform integer in [0, bound), bound > 0. Unbiased (Lemire).
  std::uint64_t below(std::uint64_t bound) noexcept;
  bool bernoulli(double p) noexcept { return uniform() < p; }
  /// +1 or -1 with equal probability.
  double sign() noexcept { return (next_u64() >> 63) != 0 ? 1.0 : -1.0; }

 private:
  std::uint64_t key_;
  std::array<std::uint64_t, 4> state_{};
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

}  // namespace sketchsolve
