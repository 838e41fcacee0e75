#pragma once

#include <cmath>
#include <cstdint>

namespace cuttree {

// Counter-based generator: output j of stream s under seed k is
// mix(k, s, j), so any (replica, draw) pair can be regenerated without
// sequencing. Streams split from a master seed are independent for all
// practical purposes (SplitMix64 / Stafford mix13 finalizer).
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
      : key_(mix(seed ^ mix(stream ^ 0x9e3779b97f4a7c15ull))), counter_(0) {}

  // Independent generator for a sub-stream (replica, worker, ...).
  Rng stream(std::uint64_t id) const { return Rng(key_, id + 1); }

  std::uint64_t u64() { return mix(key_ + 0x9e3779b97f4a7c15ull * ++counter_); }

  // Uniform on [0,1) with 53 random bits.
  double u01() { return static_cast<double>(u64() >> 11) * 0x1.0p-53; }

  // Uniform on (0,1], safe as argument of log.
  double u01_open() { return (static_cast<double>(u64() >> 11) + 1.0) * 0x1.0p-53; }

  // Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(u64()) * n) >> 64);
  }

  double exponential(double rate) { return -std::log(u01_open()) / rate; }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ull;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebull;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t key_;
  std::uint64_t counter_;
};

}  // namespace cuttree
