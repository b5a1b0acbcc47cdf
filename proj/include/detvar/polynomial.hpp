#pragma once

// Sparse multivariate polynomials with exact rational coefficients.
//
// Variables are identified by index; a Ring carries their printable names.
// Index 0 is the largest variable in every order. Structured names such as
// x_i_j or p_i1_i2_i3 are laid out row-major, so x_1_1 > x_1_2 > ... > x_d_n.

#include "detvar/rational.hpp"

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace detvar {

class Monomial {
 public:
  Monomial() = default;

  explicit Monomial(std::vector<std::uint32_t> exps) : exps_(std::move(exps)) {
    while (!exps_.empty() && exps_.back() == 0) exps_.pop_back();
    degree_ = std::accumulate(exps_.begin(), exps_.end(), std::uint32_t{0});
  }

  static Monomial variable(std::size_t v, std::uint32_t e = 1) {
    std::vector<std::uint32_t> x(v + 1, 0);
    x[v] = e;
    return Monomial(std::move(x));
  }

  std::uint32_t exponent(std::size_t v) const { return v < exps_.size() ? exps_[v] : 0; }
  // One past the largest variable index with a nonzero exponent.
  std::size_t span() const { return exps_.size(); }
  std::uint32_t degree() const { return degree_; }
  bool is_one() const { return exps_.empty(); }

  bool divides(const Monomial& m) const {
    if (exps_.size() > m.exps_.size() || degree_ > m.degree_) return false;
    for (std::size_t v = 0; v < exps_.size(); ++v)
      if (exps_[v] > m.exps_[v]) return false;
    return true;
  }

  bool coprime(const Monomial& m) const {
    const std::size_t n = std::min(exps_.size(), m.exps_.size());
    for (std::size_t v = 0; v < n; ++v)
      if (exps_[v] && m.exps_[v]) return false;
    return true;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    std::vector<std::uint32_t> x(std::max(a.span(), b.span()), 0);
    for (std::size_t v = 0; v < x.size(); ++v) x[v] = a.exponent(v) + b.exponent(v);
    return Monomial(std::move(x));
  }

  // Requires d | *this.
  Monomial divided_by(const Monomial& d) const {
    std::vector<std::uint32_t> x(exps_);
    for (std::size_t v = 0; v < d.span(); ++v) {
      if (x[v] < d.exps_[v]) throw std::invalid_argument("monomial division with remainder");
      x[v] -= d.exps_[v];
    }
    return Monomial(std::move(x));
  }

  friend Monomial lcm(const Monomial& a, const Monomial& b) {
    std::vector<std::uint32_t> x(std::max(a.span(), b.span()), 0);
    for (std::size_t v = 0; v < x.size(); ++v) x[v] = std::max(a.exponent(v), b.exponent(v));
    return Monomial(std::move(x));
  }

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.exps_ == b.exps_; }

  // Canonical storage order: lexicographic with variable 0 most significant.
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
    const std::size_t n = std::max(a.span(), b.span());
    for (std::size_t v = 0; v < n; ++v) {
      const auto x = a.exponent(v), y = b.exponent(v);
      if (x != y) return x <=> y;
    }
    return std::strong_ordering::equal;
  }

  std::size_t hash() const {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (auto e : exps_) h = (h ^ e) * 0x100000001b3ULL;
    return h;
  }

 private:
  std::vector<std::uint32_t> exps_;
  std::uint32_t degree_ = 0;
};

/// A term order on monomials. Block orders compare listed blocks first (each
/// by graded reverse lex restricted to the block); variables in no listed
/// block form a trailing block.
class MonomialOrder {
 public:
  enum class Kind { lex, grevlex, block };

  static MonomialOrder lex() { return MonomialOrder(Kind::lex, {}); }
  static MonomialOrder grevlex() { return MonomialOrder(Kind::grevlex, {}); }
  static MonomialOrder block(std::vector<std::vector<std::size_t>> leading) {
    for (auto& b : leading) std::sort(b.begin(), b.end());
    return MonomialOrder(Kind::block, std::move(leading));
  }

  Kind kind() const { return kind_; }
  const std::vector<std::vector<std::size_t>>& blocks() const { return blocks_; }

  std::string name() const {
    switch (kind_) {
      case Kind::lex: return "lex";
      case Kind::grevlex: return "grevlex";
      case Kind::block: return "block";
    }
    return "?";
  }

  std::strong_ordering compare(const Monomial& a, const Monomial& b) const {
    switch (kind_) {
      case Kind::lex: return a <=> b;
      case Kind::grevlex: return grevlex_compare(a, b);
      case Kind::block: {
        for (const auto& blk : blocks_)
          if (auto c = restricted_grevlex(a, b, blk); c != 0) return c;
        std::vector<std::size_t> rest;
        const std::size_t n = std::max(a.span(), b.span());
        for (std::size_t v = 0; v < n; ++v)
          if (!in_blocks(v)) rest.push_back(v);
        return restricted_grevlex(a, b, rest);
      }
    }
    return std::strong_ordering::equal;
  }

  bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }

 private:
  MonomialOrder(Kind k, std::vector<std::vector<std::size_t>> blocks) : kind_(k), blocks_(std::move(blocks)) {}

  static std::strong_ordering grevlex_compare(const Monomial& a, const Monomial& b) {
    if (a.degree() != b.degree()) return a.degree() <=> b.degree();
    for (std::size_t v = std::max(a.span(), b.span()); v-- > 0;) {
      const auto x = a.exponent(v), y = b.exponent(v);
      if (x != y) return y <=> x;
    }
    return std::strong_ordering::equal;
  }

  static std::strong_ordering restricted_grevlex(const Monomial& a, const Monomial& b,
                                                 const std::vector<std::size_t>& vars) {
    std::uint32_t da = 0, db = 0;
    for (auto v : vars) {
      da += a.exponent(v);
      db += b.exponent(v);
    }
    if (da != db) return da <=> db;
    for (auto it = vars.rbegin(); it != vars.rend(); ++it) {
      const auto x = a.exponent(*it), y = b.exponent(*it);
      if (x != y) return y <=> x;
    }
    return std::strong_ordering::equal;
  }

  bool in_blocks(std::size_t v) const {
    for (const auto& b : blocks_)
      if (std::binary_search(b.begin(), b.end(), v)) return true;
    return false;
  }

  Kind kind_;
  std::vector<std::vector<std::size_t>> blocks_;
};

struct Term {
  Monomial mono;
  Rational coeff;
};

class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(const Rational& c) {  // NOLINT(google-explicit-constructor)
    if (!detvar::is_zero(c)) terms_.push_back({Monomial(), c});
  }
  Polynomial(long c) : Polynomial(Rational(c)) {}  // NOLINT(google-explicit-constructor)

  static Polynomial variable(std::size_t v) { return term(Monomial::variable(v), Rational(1)); }

  static Polynomial term(Monomial m, Rational c) {
    Polynomial p;
    if (!detvar::is_zero(c)) p.terms_.push_back({std::move(m), std::move(c)});
    return p;
  }

  // Combines like terms and drops zeros.
  static Polynomial from_terms(std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.mono > b.mono; });
    Polynomial p;
    for (auto& t : terms) {
      if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
        p.terms_.back().coeff += t.coeff;
      } else {
        if (!p.terms_.empty() && detvar::is_zero(p.terms_.back().coeff)) p.terms_.pop_back();
        p.terms_.push_back(std::move(t));
      }
    }
    if (!p.terms_.empty() && detvar::is_zero(p.terms_.back().coeff)) p.terms_.pop_back();
    return p;
  }

  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  std::span<const Term> terms() const { return terms_; }

  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }

  std::uint32_t total_degree() const {
    std::uint32_t d = 0;
    for (const auto& t : terms_) d = std::max(d, t.mono.degree());
    return d;
  }

  bool is_homogeneous() const {
    for (const auto& t : terms_)
      if (t.mono.degree() != terms_.front().mono.degree()) return false;
    return true;
  }

  // One past the largest variable index occurring.
  std::size_t span() const {
    std::size_t s = 0;
    for (const auto& t : terms_) s = std::max(s, t.mono.span());
    return s;
  }

  std::vector<std::size_t> variables() const {
    std::vector<bool> seen(span(), false);
    for (const auto& t : terms_)
      for (std::size_t v = 0; v < t.mono.span(); ++v)
        if (t.mono.exponent(v)) seen[v] = true;
    std::vector<std::size_t> vars;
    for (std::size_t v = 0; v < seen.size(); ++v)
      if (seen[v]) vars.push_back(v);
    return vars;
  }

  Polynomial operator-() const {
    Polynomial p = *this;
    for (auto& t : p.terms_) t.coeff = -t.coeff;
    return p;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) { return merge(a, b, Rational(1)); }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return merge(a, b, Rational(-1)); }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::map<Monomial, Rational, std::greater<>> acc;
    for (const auto& s : a.terms_)
      for (const auto& t : b.terms_) {
        auto [it, fresh] = acc.try_emplace(s.mono * t.mono, s.coeff * t.coeff);
        if (!fresh) it->second += s.coeff * t.coeff;
      }
    Polynomial p;
    for (auto& [m, c] : acc)
      if (!detvar::is_zero(c)) p.terms_.push_back({m, c});
    return p;
  }

  friend Polynomial operator*(const Rational& c, const Polynomial& a) {
    if (detvar::is_zero(c)) return {};
    Polynomial p = a;
    for (auto& t : p.terms_) t.coeff *= c;
    return p;
  }

  Polynomial& operator+=(const Polynomial& b) { return *this = *this + b; }
  Polynomial& operator-=(const Polynomial& b) { return *this = *this - b; }
  Polynomial& operator*=(const Polynomial& b) { return *this = *this * b; }

  Polynomial multiply_term(const Monomial& m, const Rational& c) const {
    Polynomial p;
    if (detvar::is_zero(c)) return p;
    p.terms_.reserve(terms_.size());
    for (const auto& t : terms_) p.terms_.push_back({t.mono * m, t.coeff * c});
    // Multiplying by a monomial preserves the lex order.
    return p;
  }

  /// Exact value at a point; point[v] is the value of variable v.
  Rational evaluate(std::span<const Rational> point) const {
    if (span() > point.size()) throw std::invalid_argument("evaluate: unassigned variable");
    Rational sum = 0;
    for (const auto& t : terms_) {
      Rational prod = t.coeff;
      for (std::size_t v = 0; v < t.mono.span(); ++v) {
        const auto e = t.mono.exponent(v);
        if (e == 0) continue;
        Rational pw;
        mpz_pow_ui(pw.get_num_mpz_t(), point[v].get_num_mpz_t(), e);
        mpz_pow_ui(pw.get_den_mpz_t(), point[v].get_den_mpz_t(), e);
        prod *= pw;
      }
      sum += prod;
    }
    return sum;
  }

  Polynomial derivative(std::size_t v) const {
    std::vector<Term> out;
    for (const auto& t : terms_) {
      const auto e = t.mono.exponent(v);
      if (e == 0) continue;
      std::vector<std::uint32_t> x(t.mono.span());
      for (std::size_t u = 0; u < x.size(); ++u) x[u] = t.mono.exponent(u);
      x[v] -= 1;
      out.push_back({Monomial(std::move(x)), t.coeff * e});
    }
    return from_terms(std::move(out));
  }

  /// Variable v becomes variable map[v].
  Polynomial renamed(std::span<const std::size_t> map) const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
      std::vector<std::uint32_t> x;
      for (std::size_t v = 0; v < t.mono.span(); ++v) {
        const auto e = t.mono.exponent(v);
        if (e == 0) continue;
        if (v >= map.size()) throw std::invalid_argument("renamed: variable outside map");
        if (x.size() <= map[v]) x.resize(map[v] + 1, 0);
        x[map[v]] += e;
      }
      out.push_back({Monomial(std::move(x)), t.coeff});
    }
    return from_terms(std::move(out));
  }

  const Term& leading_term(const MonomialOrder& ord) const {
    if (terms_.empty()) throw std::invalid_argument("leading term of zero polynomial");
    const Term* best = &terms_.front();
    for (const auto& t : terms_)
      if (ord.greater(t.mono, best->mono)) best = &t;
    return *best;
  }

  std::vector<Term> sorted_terms(const MonomialOrder& ord) const {
    std::vector<Term> ts(terms_);
    std::sort(ts.begin(), ts.end(), [&](const Term& a, const Term& b) { return ord.greater(a.mono, b.mono); });
    return ts;
  }

  /// Sign-normalized copy: leading coefficient under `ord` is positive.
  Polynomial sign_normalized(const MonomialOrder& ord = MonomialOrder::grevlex()) const {
    if (is_zero() || sgn(leading_term(ord).coeff) > 0) return *this;
    return -*this;
  }

  /// Monic copy under `ord`.
  Polynomial monic(const MonomialOrder& ord) const {
    if (is_zero()) return *this;
    return Rational(1 / leading_term(ord).coeff) * *this;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (!(a.terms_[i].mono == b.terms_[i].mono) || a.terms_[i].coeff != b.terms_[i].coeff) return false;
    return true;
  }

  // Arbitrary but fixed total order, for sets and sorting.
  friend bool operator<(const Polynomial& a, const Polynomial& b) {
    const std::size_t n = std::min(a.terms_.size(), b.terms_.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (auto c = a.terms_[i].mono <=> b.terms_[i].mono; c != 0) return c > 0;
      if (a.terms_[i].coeff != b.terms_[i].coeff) return a.terms_[i].coeff < b.terms_[i].coeff;
    }
    return a.terms_.size() < b.terms_.size();
  }

 private:
  static Polynomial merge(const Polynomial& a, const Polynomial& b, const Rational& sb) {
    Polynomial p;
    p.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      if (j == b.terms_.size() || (i < a.terms_.size() && a.terms_[i].mono > b.terms_[j].mono)) {
        p.terms_.push_back(a.terms_[i++]);
      } else if (i == a.terms_.size() || b.terms_[j].mono > a.terms_[i].mono) {
        p.terms_.push_back({b.terms_[j].mono, sb * b.terms_[j].coeff});
        ++j;
      } else {
        Rational c = a.terms_[i].coeff + sb * b.terms_[j].coeff;
        if (!detvar::is_zero(c)) p.terms_.push_back({a.terms_[i].mono, std::move(c)});
        ++i;
        ++j;
      }
    }
    return p;
  }

  std::vector<Term> terms_;  // descending canonical order, no zero coefficients
};

/// Printable variable names, indexed like polynomial variables.
class Ring {
 public:
  Ring() = default;
  explicit Ring(std::vector<std::string> names) : names_(std::move(names)) {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (!index_.emplace(names_[i], i).second) throw std::invalid_argument("duplicate variable name " + names_[i]);
  }

  /// x_i_j for a rows x cols matrix, row-major, 1-based labels.
  static Ring matrix(std::string_view stem, std::size_t rows, std::size_t cols) {
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= rows; ++i)
      for (std::size_t j = 1; j <= cols; ++j)
        names.push_back(std::string(stem) + "_" + std::to_string(i) + "_" + std::to_string(j));
    return Ring(std::move(names));
  }

  /// p_i1_..._in over a tensor shape, row-major (last index fastest).
  static Ring tensor(std::string_view stem, std::span<const std::size_t> shape) {
    std::vector<std::string> names;
    std::size_t total = 1;
    for (auto s : shape) total *= s;
    std::vector<std::size_t> idx(shape.size(), 0);
    for (std::size_t flat = 0; flat < total; ++flat) {
      std::string n(stem);
      for (auto i : idx) n += "_" + std::to_string(i + 1);
      names.push_back(std::move(n));
      for (std::size_t a = shape.size(); a-- > 0;) {
        if (++idx[a] < shape[a]) break;
        idx[a] = 0;
      }
    }
    return Ring(std::move(names));
  }

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t v) const { return names_.at(v); }
  const std::vector<std::string>& names() const { return names_; }

  std::optional<std::size_t> index(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  Ring with_variable(std::string name) const {
    auto names = names_;
    names.push_back(std::move(name));
    return Ring(std::move(names));
  }

  friend bool operator==(const Ring& a, const Ring& b) { return a.names_ == b.names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Text form "c * x_1_1^2 * x_2_3 - x_1_2 + 3/4", terms in decreasing `ord`.
inline std::string format_polynomial(const Polynomial& f, const Ring& ring,
                                     const MonomialOrder& ord = MonomialOrder::grevlex()) {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : f.sorted_terms(ord)) {
    const bool neg = sgn(t.coeff) < 0;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    const Rational mag = abs(t.coeff);
    bool need_star = false;
    if (mag != 1 || t.mono.is_one()) {
      os << to_string(mag);
      need_star = true;
    }
    for (std::size_t v = 0; v < t.mono.span(); ++v) {
      const auto e = t.mono.exponent(v);
      if (e == 0) continue;
      if (v >= ring.size()) throw std::invalid_argument("format_polynomial: variable outside ring");
      if (need_star) os << " * ";
      os << ring.name(v);
      if (e > 1) os << "^" << e;
      need_star = true;
    }
  }
  return os.str();
}

/// Parses the text form written by format_polynomial (no parentheses).
inline Polynomial parse_polynomial(std::string_view text, const Ring& ring) {
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto fail = [&](const std::string& why) -> Polynomial {
    throw std::invalid_argument("polynomial parse error at " + std::to_string(pos) + ": " + why + " in '" +
                                std::string(text) + "'");
  };
  auto read_digits = [&] {
    const std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    return std::string(text.substr(start, pos - start));
  };

  std::vector<Term> terms;
  skip();
  if (pos == text.size()) return fail("empty input");
  bool first = true;
  while (true) {
    skip();
    if (pos == text.size()) break;
    int sign = 1;
    if (text[pos] == '+' || text[pos] == '-') {
      sign = text[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (!first) {
      return fail("expected + or -");
    }
    first = false;
    Rational coeff = sign;
    std::vector<std::uint32_t> exps;
    bool any_factor = false;
    while (true) {
      skip();
      if (pos == text.size()) break;
      const char c = text[pos];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        std::string num = read_digits();
        skip();
        if (pos < text.size() && text[pos] == '/') {
          ++pos;
          skip();
          std::string den = read_digits();
          if (den.empty()) return fail("missing denominator");
          num += "/" + den;
        }
        coeff *= parse_rational(num);
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        const std::size_t start = pos;
        while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) ++pos;
        const auto name = text.substr(start, pos - start);
        auto v = ring.index(name);
        if (!v) return fail("unknown variable " + std::string(name));
        std::uint32_t e = 1;
        skip();
        if (pos < text.size() && text[pos] == '^') {
          ++pos;
          skip();
          std::string d = read_digits();
          if (d.empty()) return fail("missing exponent");
          e = static_cast<std::uint32_t>(std::stoul(d));
        }
        if (exps.size() <= *v) exps.resize(*v + 1, 0);
        exps[*v] += e;
      } else {
        return fail(std::string("unexpected character '") + c + "'");
      }
      any_factor = true;
      skip();
      if (pos < text.size() && text[pos] == '*') {
        ++pos;
        continue;
      }
      break;
    }
    if (!any_factor) return fail("empty term");
    terms.push_back({Monomial(std::move(exps)), coeff});
  }
  return Polynomial::from_terms(std::move(terms));
}

/// Sign-normalized copies with duplicates removed, first occurrence kept.
inline std::vector<Polynomial> dedup_up_to_sign(const std::vector<Polynomial>& polys) {
  std::vector<Polynomial> out;
  std::set<Polynomial> seen;
  for (const auto& f : polys) {
    if (f.is_zero()) continue;
    Polynomial g = f.sign_normalized();
    if (seen.insert(g).second) out.push_back(std::move(g));
  }
  return out;
}

/// The set {±f} collapsed to sign-normalized representatives.
inline std::set<Polynomial> generator_set(const std::vector<Polynomial>& polys) {
  std::set<Polynomial> out;
  for (const auto& f : polys)
    if (!f.is_zero()) out.insert(f.sign_normalized());
  return out;
}

}  // namespace detvar
