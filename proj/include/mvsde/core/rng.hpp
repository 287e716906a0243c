#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace mvsde {

// Counter-based random streams.
//
// Every draw is a pure function of (seed, purpose, stream_index, draw_index):
// no hidden state is shared between streams, so particles can be processed in
// any order and on any number of threads without changing a single bit of the
// output. The word generator is SplitMix64: word n of a stream with derived
// state s is mix64(s + n * GAMMA). Stream states are separated by hashing the
// (seed, purpose, index) triple twice through the same finalizer.
//
// Gaussians use the Box-Muller cosine branch; each normal draw consumes the
// two 64-bit words at counters 2n and 2n+1.

namespace detail {

inline constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

inline constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace detail

// Purpose tags keep draw spaces disjoint: initial conditions never collide
// with Brownian increments even though both are keyed by particle index.
enum class StreamPurpose : std::uint64_t {
  InitialCondition = 1,
  BrownianPath = 2,
  Probe = 3,
  Scratch = 4,
};

class RngStream {
 public:
  RngStream(std::uint64_t seed, StreamPurpose purpose, std::uint64_t index)
      : state_(derive(seed, static_cast<std::uint64_t>(purpose), index)) {}

  // n-th 64-bit word of this stream.
  std::uint64_t word_at(std::uint64_t n) const {
    return detail::mix64(state_ + (n + 1) * detail::kGamma);
  }

  // Uniform draw in (0, 1] from word n (53-bit resolution, never 0).
  double uniform_at(std::uint64_t n) const {
    return static_cast<double>((word_at(n) >> 11) + 1) * 0x1.0p-53;
  }

  // n-th standard normal of this stream (consumes words 2n and 2n+1).
  double normal_at(std::uint64_t n) const {
    const double u1 = uniform_at(2 * n);
    const double u2 = uniform_at(2 * n + 1);
    const double r = std::sqrt(-2.0 * std::log(u1));
    return r * std::cos(2.0 * std::numbers::pi * u2);
  }

  // Sequential interface for samplers that do not care about counters.
  double next_uniform() { return uniform_at(cursor_++); }
  double next_normal() { return normal_at(cursor_++); }

 private:
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t purpose,
                              std::uint64_t index) {
    const std::uint64_t a = detail::mix64(seed + purpose * detail::kGamma);
    return detail::mix64(a + (index + 1) * detail::kGamma);
  }

  std::uint64_t state_;
  std::uint64_t cursor_ = 0;
};

// Deterministic seed derivation for repeated experiment cells (N, repetition).
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a,
                                 std::uint64_t b = 0) {
  return detail::mix64(detail::mix64(base + a * detail::kGamma) +
                       b * detail::kGamma);
}

}  // namespace mvsde
