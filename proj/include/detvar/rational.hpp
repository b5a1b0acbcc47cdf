#pragma once

// Exact scalars: GMP rationals plus a prime-field shadow used only to
// pre-filter rank questions.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace detvar {

// mpq_class keeps values canonical (lowest terms, positive denominator) as
// long as every value is built through canonicalize().
using Rational = mpq_class;

inline Rational make_rational(long num, unsigned long den = 1) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  Rational q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(10); }

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

/// Arithmetic in F_p for p = 2^31 - 1.
///
/// Reduction of a rational fails when p divides its denominator; callers must
/// then fall back to exact arithmetic. For any matrix whose entries all reduce,
/// rank over F_p is at most rank over Q, so a full F_p rank certifies full
/// rank over Q without further work.
struct PrimeField {
  static constexpr std::uint64_t p = 2147483647ULL;

  static std::uint64_t add(std::uint64_t a, std::uint64_t b) { return (a + b) % p; }
  static std::uint64_t sub(std::uint64_t a, std::uint64_t b) { return (a + p - b) % p; }
  static std::uint64_t mul(std::uint64_t a, std::uint64_t b) { return (a * b) % p; }

  static std::uint64_t pow(std::uint64_t a, std::uint64_t e) {
    std::uint64_t r = 1;
    a %= p;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

  static std::uint64_t inv(std::uint64_t a) {
    if (a % p == 0) throw std::domain_error("inverse of zero in F_p");
    return pow(a, p - 2);
  }

  static std::uint64_t reduce(const mpz_class& z) {
    mpz_class r = z % mpz_class(static_cast<unsigned long>(p));
    if (r < 0) r += static_cast<unsigned long>(p);
    return r.get_ui();
  }

  static std::optional<std::uint64_t> reduce(const Rational& q) {
    std::uint64_t den = reduce(q.get_den());
    if (den == 0) return std::nullopt;
    return mul(reduce(q.get_num()), inv(den));
  }
};

}  // namespace detvar
