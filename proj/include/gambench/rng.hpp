#pragma once

#include <cmath>
#include <cstdint>
#include <cstring>
#include <random>
#include <string_view>

namespace gambench {

// All randomness flows through std::mt19937_64, whose output sequence is
// fixed by the standard, so seeded runs replay bit-identically on any
// platform. Distribution shaping is done by hand below because the standard
// <random> distributions are implementation-defined.
using RngEngine = std::mt19937_64;

// Uniform draw in [0, 1) with 53 random bits.
inline double uniform_unit(RngEngine& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Box-Muller, one deviate per call. The second deviate is discarded so each
// call consumes exactly two engine outputs regardless of the sample value.
inline double normal_sample(RngEngine& rng, double mean, double sd) {
  double u1 = uniform_unit(rng);
  double u2 = uniform_unit(rng);
  if (u1 <= 0.0) u1 = 0x1.0p-53;
  double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
  return mean + sd * z;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// FNV-1a over an arbitrary byte string, finalized through splitmix64.
class StableHash {
 public:
  StableHash& bytes(const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
      state_ ^= p[i];
      state_ *= 0x100000001B3ULL;
    }
    return *this;
  }
  StableHash& u64(std::uint64_t v) {
    unsigned char buf[8];
    for (int i = 0; i < 8; ++i) buf[i] = static_cast<unsigned char>(v >> (8 * i));
    return bytes(buf, 8);
  }
  StableHash& str(std::string_view s) { return bytes(s.data(), s.size()); }
  std::uint64_t finish() const { return splitmix64(state_); }

 private:
  std::uint64_t state_ = 0xCBF29CE484222325ULL;
};

inline std::uint64_t derive_session_seed(std::uint64_t run_seed, std::string_view condition_id,
                                         std::uint64_t iteration) {
  return StableHash{}.u64(run_seed).str(condition_id).u64(iteration).finish();
}

}  // namespace gambench
