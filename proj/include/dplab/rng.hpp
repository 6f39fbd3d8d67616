#pragma once

#include <cstdint>
#include <random>

namespace dplab {

/// Stable integer label for an atom. Fresh continuous draws get negative ids
/// (unique per stream); construction-time base atoms use non-negative ids.
using OriginId = std::int64_t;

/// Seeded random stream, one per Monte Carlo replicate.
///
/// Identical (seed, stream_id) and the same library version reproduce the
/// exact draw sequence. Distinct stream_ids give statistically independent
/// streams. Family: mt19937_64 with splitmix64 key derivation ("mt19937_64/sm64-v1").
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform draw strictly inside (0,1), 53-bit resolution.
  double uniform01();

  /// Standard normal via Box-Muller (consumes exactly two uniforms).
  double normal();

  /// Fresh id for a continuous draw: negative, unique within this stream and
  /// across streams with distinct stream_id below 2^39 (counter uses 24 bits,
  /// enough for the 1e7 stick cap).
  OriginId next_origin_id();

  /// Child stream keyed by one nonce from this stream. Used to split value
  /// randomness from stick-weight randomness inside one replicate.
  RngStream fork(std::uint64_t lane) { return RngStream(next_u64(), lane); }

 private:
  std::mt19937_64 engine_;
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t id_counter_ = 0;
};

inline constexpr const char* kGeneratorFamily = "mt19937_64/sm64-v1";
inline constexpr const char* kLibraryVersion = "dplab 0.1.0";

}  // namespace dplab
