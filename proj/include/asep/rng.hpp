#ifndef ASEP_RNG_HPP
#define ASEP_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace asep {

// Deterministic random stream.  All transforms are written out explicitly so
// that a given seed produces the same byte sequence on every platform with
// IEEE doubles, independent of standard-library distribution internals.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : eng_(seed) {}

  // Uniform in [0, 1), 53 bits.
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  // Exponential with the given rate (> 0).
  double exponential(double rate) {
    double u;
    do {
      u = uniform();
    } while (u == 0.0);
    return -std::log(u) / rate;
  }

  // Uniform integer in [0, n), n >= 1.  Rejection sampling, no modulo bias.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v;
    do {
      v = eng_();
    } while (v >= limit);
    return v % n;
  }

  // Number of failures before the first success with success probability
  // 1/(1+mean); has mean `mean`.
  std::uint64_t geometric(double mean) {
    std::uint64_t k = 0;
    const double q = mean / (1.0 + mean);
    while (uniform() < q) ++k;
    return k;
  }

  bool bernoulli(double p) { return uniform() < p; }

  // Replica stream derivation: replica r of master seed s gets an
  // independent stream.  splitmix64 finalizer over (seed, stream).
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace asep

#endif
