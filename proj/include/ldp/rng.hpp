#pragma once

#include <cstdint>
#include <random>

namespace ldp {

// One independent engine per (seed, stream) pair.  Every Monte Carlo sample
// owns its own stream keyed by its global index, so results are reproducible
// bit-for-bit regardless of how samples are partitioned across workers.
inline std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream & 0xffffffffu),
                    static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

// Uniform in [0, 1) from the top 53 bits; avoids distribution objects whose
// draw sequence is implementation-defined.
inline double uniform01(std::mt19937_64& g) {
  return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

// Standard normal via Box-Muller; consumes exactly two uniforms per draw so
// the stream position is a pure function of the call count.
inline double standard_normal(std::mt19937_64& g) {
  double u1 = uniform01(g);
  double u2 = uniform01(g);
  while (u1 <= 0.0) u1 = uniform01(g);  // guard log(0); vanishing probability
  double r = std::sqrt(-2.0 * std::log(u1));
  return r * std::cos(6.283185307179586476925286766559 * u2);
}

// FNV-1a on a byte view; used to derive per-cell seeds and content hashes.
inline std::uint64_t fnv1a(const void* data, std::size_t len,
                           std::uint64_t h = 14695981039346656037ull) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  return h;
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t words[2] = {seed, salt};
  return fnv1a(words, sizeof(words));
}

}  // namespace ldp
