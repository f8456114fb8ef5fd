#pragma once

#include <cmath>
#include <cstdint>

namespace fluctlab {

// Counter-based random stream: the state of stream t is a pure function of
// (master_seed, t), so every trial draws the same variates no matter which
// worker thread runs it or in which order.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_id)
      : state_(mix(mix(master_seed ^ 0x26aa069ea2fb1a4dULL) + stream_id)) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix(state_);
  }

  // uniform on [0,1) with 53-bit resolution
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // uniform on (0,1); never an endpoint, safe under log()
  double next_open() { return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53; }

  // standard normal, Box-Muller cosine branch: exactly two uniforms per call
  double next_gaussian() {
    const double u = next_open();
    const double v = next_double();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(two_pi * v);
  }

 private:
  static constexpr double two_pi = 6.283185307179586;

  // SplitMix64 finalizer
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

}  // namespace fluctlab
