#include "dplab/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dplab {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream_id) {
  // Key derivation: mix seed and stream into one 64-bit state, then expand.
  std::uint64_t state = seed;
  std::uint64_t a = splitmix64(state);
  state ^= 0x6A09E667F3BCC909ull + stream_id;
  std::uint64_t b = splitmix64(state);
  std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                    static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : engine_(make_engine(seed, stream_id)), seed_(seed), stream_id_(stream_id) {}

double RngStream::uniform01() {
  // (x + 0.5) / 2^53 over the top 53 bits: every value strictly in (0,1).
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::normal() {
  double u1 = uniform01();
  double u2 = uniform01();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

OriginId RngStream::next_origin_id() {
  if (id_counter_ >= (1ull << 24)) {
    throw std::logic_error("RngStream: origin id counter exhausted (2^24 fresh draws)");
  }
  std::uint64_t raw = (stream_id_ << 24) | id_counter_++;
  return -1 - static_cast<OriginId>(raw & 0x7FFFFFFFFFFFFFFFull);
}

}  // namespace dplab
