#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace tksub {

// Thin wrapper over mt19937_64 that pins down every distribution we use.
// std::uniform_int_distribution and std::shuffle are implementation defined,
// which would break the byte-identical-output guarantee across toolchains,
// so bounded draws and shuffles are spelled out here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t raw() { return eng_(); }

  // Uniform in [0, bound), bound >= 1. Rejection sampling, no modulo bias.
  std::uint64_t bounded(std::uint64_t bound) {
    if (bound <= 1) return 0;
    std::uint64_t threshold = (~bound + 1) % bound;  // 2^64 mod bound
    for (;;) {
      std::uint64_t r = eng_();
      if (r >= threshold) return r % bound;
    }
  }

  int index(std::size_t size) { return static_cast<int>(bounded(static_cast<std::uint64_t>(size))); }

  // Uniform in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  bool coin(double p) { return unit() < p; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(bounded(i));
      std::swap(v[i - 1], v[j]);
    }
  }

  // Derive an independent stream; used so retry r of a randomized routine
  // does not depend on how much entropy earlier retries consumed.
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream) {
    // splitmix64 step over seed ^ golden-ratio-scrambled stream.
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace tksub
