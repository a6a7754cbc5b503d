#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace qcorr {

// Self-contained 64-bit PRNG so that every seeded result is bit-reproducible
// across platforms and standard-library versions.
//
// State initialization uses the splitmix64 sequence; the generator itself is
// xoshiro256++ (Blackman & Vigna). Gaussians come from Box-Muller.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed) {
    std::uint64_t x = seed;
    for (auto& s : state_) s = splitmix64(x);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // uniform in [0, 1)
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // uniform integer in [0, n)
  int uniform_int(int n) { return static_cast<int>(next_u64() % static_cast<std::uint64_t>(n)); }

  // standard normal via Box-Muller; second value of each pair is cached
  double gaussian() {
    if (has_cached_) {
      has_cached_ = false;
      return cached_;
    }
    const double u1 = 1.0 - uniform(); // in (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * M_PI * u2;
    cached_ = r * std::sin(a);
    has_cached_ = true;
    return r * std::cos(a);
  }

  // standard complex normal, E|z|^2 = 1
  std::complex<double> complex_gaussian() {
    return {gaussian() * M_SQRT1_2, gaussian() * M_SQRT1_2};
  }

  // Independent child stream; (seed, tag) pairs map to disjoint sequences.
  Rng derive(std::uint64_t tag) const {
    std::uint64_t x = seed_;
    std::uint64_t h = splitmix64(x) ^ (tag + 0x9e3779b97f4a7c15ULL);
    return Rng(splitmix64(h));
  }

 private:
  static std::uint64_t splitmix64(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  std::uint64_t seed_;
  std::uint64_t state_[4];
  double cached_ = 0.0;
  bool has_cached_ = false;
};

} // namespace qcorr
