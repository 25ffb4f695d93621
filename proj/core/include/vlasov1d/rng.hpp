#pragma once

#include <cstdint>
#include <random>

namespace vlasov1d {

// splitmix64 finaliser.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Sub-seed for the named stream `stream` of a run seeded with `seed`.
/// Replicas use (seed, replica index); fixed purposes use the constants in
/// `streams` below.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return mix64(mix64(seed) ^ mix64(stream + 0x632be59bd9b4e019ULL));
}

namespace streams {
inline constexpr std::uint64_t kInitialSample = 1;
inline constexpr std::uint64_t kGridSample = 2;
inline constexpr std::uint64_t kSubsample = 3;
inline constexpr std::uint64_t kReplicaBase = 1000;
}  // namespace streams

/// mt19937_64 with a fixed-width uniform mapping, so draws are bit-identical
/// across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) {
    // Rejection keeps the draw unbiased.
    const std::uint64_t limit = (~std::uint64_t{0} / n) * n;
    std::uint64_t r;
    do {
      r = engine_();
    } while (r >= limit);
    return r % n;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace vlasov1d
