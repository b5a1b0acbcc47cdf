#pragma once

// Generators and independent oracles shared by the unit tests.

#include "detvar/detvar.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace testing_support {

using namespace detvar;

/// Random sparse polynomial in `vars` variables with small coefficients.
inline Polynomial random_polynomial(Rng& rng, std::size_t vars, std::size_t terms, std::uint32_t max_exp = 3) {
  std::vector<Term> out;
  for (std::size_t t = 0; t < terms; ++t) {
    std::vector<std::uint32_t> e(vars);
    for (auto& x : e) x = static_cast<std::uint32_t>(rng.below(max_exp + 1));
    out.push_back({Monomial(e), make_rational(static_cast<long>(rng.uniform(-9, 9)), static_cast<unsigned long>(rng.uniform(1, 5)))});
  }
  return Polynomial::from_terms(out);
}

inline std::vector<Rational> random_point(Rng& rng, std::size_t n, unsigned bits = 12) {
  std::vector<Rational> p(n);
  for (auto& x : p) x = rng.rational(bits);
  return p;
}

inline QMatrix small_matrix(Rng& rng, std::size_t r, std::size_t c, std::int64_t lo = -3, std::int64_t hi = 3) {
  QMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = Rational(rng.uniform(lo, hi));
  return m;
}

inline int permutation_sign(const std::vector<std::size_t>& p) {
  int sign = 1;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) sign = -sign;
  return sign;
}

/// Leibniz sum over all permutations.
template <class T>
T leibniz_determinant(const Matrix<T>& m) {
  std::vector<std::size_t> p(m.rows());
  std::iota(p.begin(), p.end(), 0);
  T total(0);
  do {
    T prod(1);
    for (std::size_t i = 0; i < p.size(); ++i) prod = prod * m(i, p[i]);
    if (permutation_sign(p) > 0)
      total = total + prod;
    else
      total = total - prod;
  } while (std::next_permutation(p.begin(), p.end()));
  return total;
}

/// Rank as the largest k with a nonzero k × k minor, minors by Leibniz.
inline std::size_t rank_by_minors(const QMatrix& m) {
  for (std::size_t k = std::min(m.rows(), m.cols()); k > 0; --k) {
    bool found = false;
    for_each_subset(m.rows(), k, [&](std::span<const std::size_t> r) {
      if (found) return;
      for_each_subset(m.cols(), k, [&](std::span<const std::size_t> c) {
        if (!found && !is_zero(leibniz_determinant(m.select_rows(r).select_columns(c)))) found = true;
      });
    });
    if (found) return k;
  }
  return 0;
}

/// Textbook multivariate division: repeatedly cancel the leading term of the
/// running polynomial with the first divisor whose leading monomial divides
/// it, otherwise move that term to the remainder.
inline Polynomial naive_remainder(Polynomial f, const std::vector<Polynomial>& divisors, const MonomialOrder& ord) {
  Polynomial rem;
  while (!f.is_zero()) {
    const Term lt = f.leading_term(ord);
    bool divided = false;
    for (const auto& g : divisors) {
      if (g.is_zero()) continue;
      const Term lg = g.leading_term(ord);
      if (lg.mono.divides(lt.mono)) {
        f -= g.multiply_term(lt.mono.divided_by(lg.mono), lt.coeff / lg.coeff);
        divided = true;
        break;
      }
    }
    if (!divided) {
      const Polynomial t = Polynomial::term(lt.mono, lt.coeff);
      rem += t;
      f -= t;
    }
  }
  return rem;
}

inline bool no_term_divisible(const Polynomial& r, const std::vector<Polynomial>& basis, const MonomialOrder& ord) {
  for (const auto& t : r.terms())
    for (const auto& g : basis)
      if (g.leading_term(ord).mono.divides(t.mono)) return false;
  return true;
}

}  // namespace testing_support
