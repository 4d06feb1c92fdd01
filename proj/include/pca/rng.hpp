#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace pca {

// Seeded stream with pure derivation of child streams. A child depends only
// on (key, index), never on how much the parent has been consumed, so
// realization i gets the same draws regardless of scheduling.
class Rng {
 public:
  explicit Rng(std::uint64_t key) : key_(key), engine_(mix(key)) {}

  Rng split(std::uint64_t index) const { return Rng(mix(key_ ^ mix(index + 0x9e3779b97f4a7c15ULL))); }
  std::uint64_t key() const { return key_; }

  double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }
  double normal() { return normal_(engine_); }
  // Circularly symmetric CN(0,1).
  std::complex<double> cnormal() {
    constexpr double s = 0.70710678118654752440;
    double re = normal_(engine_);
    double im = normal_(engine_);
    return {s * re, s * im};
  }
  std::size_t index(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
  }
  std::mt19937_64& engine() { return engine_; }

  static std::uint64_t mix(std::uint64_t x) {
    // splitmix64 finalizer
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

 private:
  std::uint64_t key_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace pca
