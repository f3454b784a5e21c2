#pragma once

#include <array>
#include <cstdint>

namespace banach::rng {

// Philox4x32-10 (Salmon et al., "Parallel random numbers: as easy as 1, 2, 3",
// SC'11). Stateless: each 128-bit counter maps independently to 128 output
// bits, so chunked parallel sampling reproduces the serial stream bit-exactly.

namespace detail {

inline constexpr std::uint32_t kWeylA = 0x9E3779B9u;
inline constexpr std::uint32_t kWeylB = 0xBB67AE85u;
inline constexpr std::uint32_t kMulA = 0xD2511F53u;
inline constexpr std::uint32_t kMulB = 0xCD9E8D57u;

inline void round_(std::uint32_t c[4], std::uint32_t k0, std::uint32_t k1) {
  const std::uint64_t p0 = static_cast<std::uint64_t>(kMulA) * c[0];
  const std::uint64_t p1 = static_cast<std::uint64_t>(kMulB) * c[2];
  const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
  const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
  const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
  const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
  const std::uint32_t r0 = hi1 ^ c[1] ^ k0;
  const std::uint32_t r1 = lo1;
  const std::uint32_t r2 = hi0 ^ c[3] ^ k1;
  const std::uint32_t r3 = lo0;
  c[0] = r0;
  c[1] = r1;
  c[2] = r2;
  c[3] = r3;
}

}  // namespace detail

// 128 output bits as two u64 words for counter (c0,c1,c2,c3) under a 64-bit key.
inline std::array<std::uint64_t, 2> philox(std::uint64_t key, std::uint32_t c0, std::uint32_t c1,
                                           std::uint32_t c2, std::uint32_t c3) {
  std::uint32_t c[4] = {c0, c1, c2, c3};
  std::uint32_t k0 = static_cast<std::uint32_t>(key);
  std::uint32_t k1 = static_cast<std::uint32_t>(key >> 32);
  for (int r = 0; r < 10; ++r) {
    detail::round_(c, k0, k1);
    k0 += detail::kWeylA;
    k1 += detail::kWeylB;
  }
  return {(static_cast<std::uint64_t>(c[1]) << 32) | c[0],
          (static_cast<std::uint64_t>(c[3]) << 32) | c[2]};
}

// Strictly inside (0,1): safe for quantile transforms.
inline double to_unit_open(std::uint64_t z) {
  return (static_cast<double>(z >> 11) + 0.5) * 0x1.0p-53;
}

// Two uniforms addressed by (seed, stream, index, block). `index` is the
// sample counter, `block` distinguishes draws within one sample.
inline std::array<double, 2> uniforms2(std::uint64_t seed, std::uint32_t stream,
                                       std::uint64_t index, std::uint32_t block) {
  auto words = philox(seed, block, static_cast<std::uint32_t>(index),
                      static_cast<std::uint32_t>(index >> 32), stream);
  return {to_unit_open(words[0]), to_unit_open(words[1])};
}

// Normal quantile, Wichura's AS241 (PPND16); |rel err| < 1e-15 on (0,1).
double inverse_normal_cdf(double p);

inline double gaussian_at(std::uint64_t seed, std::uint32_t stream, std::uint64_t index,
                          std::uint32_t block = 0) {
  return inverse_normal_cdf(uniforms2(seed, stream, index, block)[0]);
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Independent child seed for a tagged purpose (restart index, retry, ...).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
  return splitmix64(seed ^ splitmix64(tag));
}

// One stream id per sampling purpose; keeps draws of different estimators
// non-overlapping under a shared root seed.
namespace streams {
inline constexpr std::uint32_t noise = 1;
inline constexpr std::uint32_t embed_matrix = 2;
inline constexpr std::uint32_t embed_cert = 3;
inline constexpr std::uint32_t separation = 4;
inline constexpr std::uint32_t lip_pairs = 5;
inline constexpr std::uint32_t search = 6;
inline constexpr std::uint32_t eval = 7;
inline constexpr std::uint32_t opnorm = 8;
inline constexpr std::uint32_t scenario = 9;
}  // namespace streams

}  // namespace banach::rng
