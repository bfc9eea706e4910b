// SPDX-License-Identifier: Apache-2.0
#ifndef BITSCALE_RNG_HPP
#define BITSCALE_RNG_HPP

#include <cstdint>
#include <vector>

namespace bitscale {

/// Counter-based pseudo-random stream.
///
/// The generator is the SplitMix64 finalizer applied to
/// `key + counter * 0x9E3779B97F4A7C15`, where `key` is derived by mixing
/// (seed, stream_id). Output i therefore depends only on (seed, stream_id,
/// counter + i): streams can be split, replayed and advanced independently,
/// and the same triple produces the same bits on every platform. Distinct
/// stream_ids give statistically independent sequences.
///
/// Gaussian variates use the Box-Muller cosine branch and consume exactly
/// two counter steps each, so a vector of n draws equals n single draws.
class RngStream {
public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id, std::uint64_t counter = 0);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }
  std::uint64_t counter() const { return counter_; }

  /// Derived stream with an id hashed from (stream_id, child). Used to fan
  /// out per-cell streams whose draws are order-independent.
  RngStream substream(std::uint64_t child) const;

  std::uint64_t next_u64();
  /// Uniform in [0, 1), 53-bit resolution.
  double uniform();
  /// Uniform in (0, 1]; safe as a log() argument.
  double uniform_pos();
  /// Uniform integer in [0, n), n >= 1.
  std::uint64_t uniform_int(std::uint64_t n);
  /// Standard normal variate.
  double gaussian();
  std::vector<double> gaussian_vec(std::size_t n);

  static std::uint64_t mix64(std::uint64_t z);

private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t counter_;
  std::uint64_t key_;
};

} // namespace bitscale

#endif
