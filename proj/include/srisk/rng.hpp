#pragma once

#include <cstdint>
#include <limits>

namespace srisk {

// SplitMix64 step; used only to expand seeds.
constexpr std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Root seed of an auxiliary experiment `tag` derived from a user root seed.
constexpr std::uint64_t sub_seed(std::uint64_t root, std::uint64_t tag) noexcept {
  std::uint64_t state = root ^ (tag * 0x9fb21c651e98df25ULL);
  return splitmix64(state);
}

/// Deterministic random stream (xoshiro256**), cheap to construct so every
/// Monte Carlo path can own one. Streams are identified by (root, id).
///
/// Satisfies UniformRandomBitGenerator.
class SeedStream {
 public:
  using result_type = std::uint64_t;

  explicit SeedStream(std::uint64_t root, std::uint64_t id = 0) noexcept {
    std::uint64_t sm = root;
    const std::uint64_t mixed = splitmix64(sm) ^ (id * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL);
    std::uint64_t state = mixed;
    for (auto& w : s_) w = splitmix64(state);
  }

  /// Child stream; the derivation depends only on (this stream's seed material, id).
  [[nodiscard]] static SeedStream derive(std::uint64_t root, std::uint64_t id) noexcept {
    return SeedStream(root, id);
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform() noexcept {
    return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t s_[4]{};
};

}  // namespace srisk
