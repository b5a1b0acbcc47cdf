#pragma once

// Seeded randomness. All draws go through mt19937_64 (whose output sequence is
// fixed by the standard) and our own bounded-integer routine, so identical
// seeds give identical rationals on every standard library.

#include "detvar/rational.hpp"

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace detvar {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Child seed for (stream, index) under a run seed. Streams separate the
/// independent consumers of one run (samplers, checks); index is the trial.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index = 0) {
  return splitmix64(splitmix64(splitmix64(seed) ^ stream) ^ index);
}

/// Default magnitude bound for random numerators and denominators.
inline constexpr unsigned kDefaultRandomBits = 31;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, n) by rejection.
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("Rng::below(0)");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  // Uniform in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    if (hi < lo) throw std::invalid_argument("Rng::uniform: empty range");
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(span == 0 ? engine_() : below(span));
  }

  /// Numerator in [-2^bits, 2^bits], denominator in [1, 2^bits].
  Rational rational(unsigned bits = kDefaultRandomBits) {
    const std::int64_t m = std::int64_t{1} << bits;
    Rational q(mpz_class(static_cast<long>(uniform(-m, m))), mpz_class(static_cast<long>(uniform(1, m))));
    q.canonicalize();
    return q;
  }

  /// Strictly positive rational with numerator and denominator in [1, 2^bits].
  Rational positive_rational(unsigned bits = kDefaultRandomBits) {
    const std::int64_t m = std::int64_t{1} << bits;
    Rational q(mpz_class(static_cast<long>(uniform(1, m))), mpz_class(static_cast<long>(uniform(1, m))));
    q.canonicalize();
    return q;
  }

  /// Rational in the closed interval [0, 1].
  Rational unit_rational(unsigned bits = kDefaultRandomBits) {
    const std::int64_t m = std::int64_t{1} << bits;
    Rational q(mpz_class(static_cast<long>(uniform(0, m))), mpz_class(static_cast<long>(m)));
    q.canonicalize();
    return q;
  }

  /// Point in the interior of the probability simplex with `size` coordinates.
  std::vector<Rational> simplex_interior(std::size_t size, unsigned bits = kDefaultRandomBits) {
    std::vector<Rational> w(size);
    Rational total = 0;
    for (auto& x : w) {
      x = positive_rational(bits);
      total += x;
    }
    for (auto& x : w) x /= total;
    return w;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace detvar
