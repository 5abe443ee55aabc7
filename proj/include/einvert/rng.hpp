#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace einvert {

/// One splitmix64 step. Used for seed derivation so that per-trial seeds are
/// decorrelated from consecutive master seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Deterministic child seed for (master, index) pairs.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t s = master;
  std::uint64_t a = splitmix64(s);
  s ^= index * 0xda942042e4dd58b5ULL + 0x2545f4914f6cdd1dULL;
  std::uint64_t b = splitmix64(s);
  return a ^ (b + 0x9e3779b97f4a7c15ULL);
}

/// Seeded generator with hand-rolled Gaussian sampling.
///
/// std::normal_distribution is implementation-defined, so Gaussians go
/// through an explicit Box-Muller / polar-form transform to keep every
/// generated instance bit-identical across standard libraries.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform double in [0, 1), 53-bit resolution.
  double uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard real Gaussian via Box-Muller (cosine branch only; no cached
  /// second draw, so the consumption pattern is one pair of uniforms per
  /// sample and state never depends on call parity).
  double gaussian() {
    double u1 = 1.0 - uniform();  // (0, 1], keeps log finite
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * 3.141592653589793238462643 * u2);
  }

  /// Standard complex Gaussian with E|z|^2 = 1 (real and imaginary parts
  /// N(0, 1/2)): radius from an exponential, phase uniform.
  std::complex<double> cgaussian() {
    double u1 = 1.0 - uniform();
    double u2 = uniform();
    double r = std::sqrt(-std::log(u1));
    double phi = 2.0 * 3.141592653589793238462643 * u2;
    return {r * std::cos(phi), r * std::sin(phi)};
  }

  /// Uniform integer in [0, bound); bound must be >= 1. Multiply-shift
  /// mapping: deterministic and unbiased enough for instance generation.
  std::uint64_t integer(std::uint64_t bound) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(gen_()) * bound) >> 64);
  }

  /// Fisher-Yates shuffle driven by integer().
  template <class T>
  void shuffle(std::vector<T>& values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(integer(i));
      std::swap(values[i - 1], values[j]);
    }
  }

private:
  std::mt19937_64 gen_;
};

}  // namespace einvert
