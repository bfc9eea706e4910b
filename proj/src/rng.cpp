// SPDX-License-Identifier: Apache-2.0
#include "bitscale/rng.hpp"

#include <cmath>
#include <numbers>

namespace bitscale {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kStreamSalt = 0xD1B54A32D192ED03ULL;
} // namespace

std::uint64_t RngStream::mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id, std::uint64_t counter)
    : seed_(seed), stream_id_(stream_id), counter_(counter),
      key_(mix64(seed ^ mix64(stream_id * kGolden ^ kStreamSalt))) {}

RngStream RngStream::substream(std::uint64_t child) const {
  return RngStream(seed_, mix64(stream_id_ ^ (child + 1) * kGolden));
}

std::uint64_t RngStream::next_u64() {
  std::uint64_t v = mix64(key_ + counter_ * kGolden);
  ++counter_;
  return v;
}

double RngStream::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform_pos() {
  return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

std::uint64_t RngStream::uniform_int(std::uint64_t n) {
  // Lemire multiply-shift; bias is negligible for the desk-scale n used here.
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
}

double RngStream::gaussian() {
  double u1 = uniform_pos();
  double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::vector<double> RngStream::gaussian_vec(std::size_t n) {
  std::vector<double> out(n);
  for (double &v : out)
    v = gaussian();
  return out;
}

} // namespace bitscale
