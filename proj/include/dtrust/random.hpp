#pragma once

#include <cstdint>
#include <random>

namespace dtrust {

// splitmix64 finalizer; used to derive independent sub-seeds from a master seed.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) noexcept {
  return mix64(mix64(base) ^ mix64(stream + 0x632be59bd9b4e019ULL));
}

// Stream labels for derive_seed, so the same master seed never feeds two consumers.
enum class Stream : std::uint64_t {
  LegitGraph = 1,
  Malicious = 2,
  Observations = 3,
};

constexpr std::uint64_t derive_seed(std::uint64_t base, Stream s) noexcept {
  return derive_seed(base, static_cast<std::uint64_t>(s));
}

/// Seeded generator with platform-independent real draws.
///
/// std::uniform_real_distribution is implementation-defined, so draws are
/// built directly from the 64-bit Mersenne Twister output instead.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1) with 53 bits of resolution.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  bool bernoulli(double p) { return uniform01() < p; }

  std::uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace dtrust
