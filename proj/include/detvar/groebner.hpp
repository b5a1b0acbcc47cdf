#pragma once

// Ideals and a small Buchberger engine for membership tests at desk scale.
//
// Every computation runs under an explicit budget. Running out of budget
// throws BudgetExhausted; no partial basis is ever returned.

#include "detvar/polynomial.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace detvar {

struct GroebnerBudget {
  std::size_t max_pairs = 20000;     // S-pairs actually reduced
  std::uint32_t max_degree = 40;     // degree of any S-pair lcm
};

class BudgetExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Ideal {
 public:
  Ideal() = default;
  Ideal(Ring ring, std::vector<Polynomial> generators) : ring_(std::move(ring)) {
    for (auto& g : generators) {
      if (g.is_zero()) continue;
      if (g.span() > ring_.size()) throw std::invalid_argument("generator uses a variable outside the ring");
      gens_.push_back(std::move(g));
    }
  }

  const Ring& ring() const { return ring_; }
  const std::vector<Polynomial>& generators() const { return gens_; }
  bool is_zero() const { return gens_.empty(); }

  bool has_basis() const { return basis_.has_value(); }
  const std::vector<Polynomial>& basis() const {
    if (!basis_) throw std::logic_error("ideal has no cached Groebner basis");
    return basis_->second;
  }
  const MonomialOrder& basis_order() const {
    if (!basis_) throw std::logic_error("ideal has no cached Groebner basis");
    return basis_->first;
  }

  // The caller vouches that `basis` is a reduced Groebner basis under `ord`.
  Ideal with_basis(MonomialOrder ord, std::vector<Polynomial> basis) const {
    Ideal out = *this;
    out.basis_.emplace(std::move(ord), std::move(basis));
    return out;
  }

 private:
  Ring ring_;
  std::vector<Polynomial> gens_;
  std::optional<std::pair<MonomialOrder, std::vector<Polynomial>>> basis_;
};

namespace detail {

// Terms kept in ascending order under `ord`, leading term at the back.
class OrderedPoly {
 public:
  OrderedPoly() = default;
  OrderedPoly(const Polynomial& p, const MonomialOrder& ord) {
    t_ = p.sorted_terms(ord);
    std::reverse(t_.begin(), t_.end());
  }

  bool empty() const { return t_.empty(); }
  const Term& lead() const { return t_.back(); }
  std::size_t size() const { return t_.size(); }

  Polynomial to_polynomial() const { return Polynomial::from_terms(t_); }

  void make_monic() {
    if (t_.empty()) return;
    const Rational inv = 1 / t_.back().coeff;
    for (auto& t : t_) t.coeff *= inv;
  }

  Term pop_lead() {
    Term t = std::move(t_.back());
    t_.pop_back();
    return t;
  }

  // *this - c * m * g.
  void subtract_scaled(const Rational& c, const Monomial& m, const OrderedPoly& g, const MonomialOrder& ord) {
    std::vector<Term> out;
    out.reserve(t_.size() + g.t_.size());
    std::size_t i = 0, j = 0;
    while (i < t_.size() || j < g.t_.size()) {
      if (j == g.t_.size()) {
        out.push_back(std::move(t_[i++]));
        continue;
      }
      Monomial gm = g.t_[j].mono * m;
      if (i == t_.size()) {
        out.push_back({std::move(gm), -c * g.t_[j].coeff});
        ++j;
        continue;
      }
      const auto cmp = ord.compare(t_[i].mono, gm);
      if (cmp < 0) {
        out.push_back(std::move(t_[i++]));
      } else if (cmp > 0) {
        out.push_back({std::move(gm), -c * g.t_[j].coeff});
        ++j;
      } else {
        Rational v = t_[i].coeff - c * g.t_[j].coeff;
        if (!is_zero(v)) out.push_back({std::move(gm), std::move(v)});
        ++i;
        ++j;
      }
    }
    t_ = std::move(out);
  }

  // Terms strictly below the leader, for tail reduction.
  std::vector<Term>& raw() { return t_; }

 private:
  std::vector<Term> t_;
};

inline const OrderedPoly* find_divisor(const Monomial& m, const std::vector<OrderedPoly>& G, std::size_t skip = SIZE_MAX) {
  for (std::size_t k = 0; k < G.size(); ++k) {
    if (k == skip || G[k].empty()) continue;
    if (G[k].lead().mono.divides(m)) return &G[k];
  }
  return nullptr;
}

// Full reduction of h modulo G (leading terms of G monic).
inline OrderedPoly reduce(OrderedPoly h, const std::vector<OrderedPoly>& G, const MonomialOrder& ord,
                          std::size_t skip = SIZE_MAX) {
  std::vector<Term> rem;  // collected in descending order
  while (!h.empty()) {
    const Term& lt = h.lead();
    if (const OrderedPoly* g = find_divisor(lt.mono, G, skip)) {
      const Rational c = lt.coeff / g->lead().coeff;
      const Monomial m = lt.mono.divided_by(g->lead().mono);
      h.subtract_scaled(c, m, *g, ord);
    } else {
      rem.push_back(h.pop_lead());
    }
  }
  OrderedPoly r;
  std::reverse(rem.begin(), rem.end());
  r.raw() = std::move(rem);
  return r;
}

inline OrderedPoly s_polynomial(const OrderedPoly& f, const OrderedPoly& g, const MonomialOrder& ord) {
  const Monomial l = lcm(f.lead().mono, g.lead().mono);
  OrderedPoly s;
  s.subtract_scaled(Rational(-1) / f.lead().coeff, l.divided_by(f.lead().mono), f, ord);
  s.subtract_scaled(Rational(1) / g.lead().coeff, l.divided_by(g.lead().mono), g, ord);
  return s;
}

}  // namespace detail

inline Polynomial s_polynomial(const Polynomial& f, const Polynomial& g, const MonomialOrder& ord) {
  return detail::s_polynomial(detail::OrderedPoly(f, ord), detail::OrderedPoly(g, ord), ord).to_polynomial();
}

/// Remainder of f on full division by `divisors` (any list, not necessarily a basis).
inline Polynomial reduce(const Polynomial& f, const std::vector<Polynomial>& divisors, const MonomialOrder& ord) {
  std::vector<detail::OrderedPoly> G;
  for (const auto& g : divisors)
    if (!g.is_zero()) G.emplace_back(g, ord);
  return detail::reduce(detail::OrderedPoly(f, ord), G, ord).to_polynomial();
}

/// Reduced Groebner basis of `ideal` under `ord`, cached on the returned copy.
/// Pair selection is by smallest lcm (ties by index), so the result and the
/// work done are deterministic for a given generator sequence.
inline Ideal buchberger(const Ideal& ideal, const MonomialOrder& ord = MonomialOrder::grevlex(),
                        const GroebnerBudget& budget = {}) {
  using detail::OrderedPoly;
  std::vector<OrderedPoly> G;
  struct Pair {
    std::size_t i, j;
    Monomial lcm;
  };
  std::vector<Pair> pairs;
  std::set<std::pair<std::size_t, std::size_t>> pending;

  auto add = [&](OrderedPoly p) {
    p.make_monic();
    const std::size_t n = G.size();
    G.push_back(std::move(p));
    for (std::size_t i = 0; i < n; ++i) {
      if (G[i].empty()) continue;
      pairs.push_back({i, n, lcm(G[i].lead().mono, G[n].lead().mono)});
      pending.emplace(i, n);
    }
  };

  for (const auto& g : ideal.generators()) {
    auto r = detail::reduce(OrderedPoly(g, ord), G, ord);
    if (!r.empty()) add(std::move(r));
  }

  std::size_t processed = 0;
  while (!pairs.empty()) {
    auto best = std::min_element(pairs.begin(), pairs.end(), [&](const Pair& a, const Pair& b) {
      if (auto c = ord.compare(a.lcm, b.lcm); c != 0) return c < 0;
      return std::pair(a.j, a.i) < std::pair(b.j, b.i);
    });
    const Pair p = *best;
    pairs.erase(best);
    pending.erase({p.i, p.j});

    const auto& fi = G[p.i].lead().mono;
    const auto& fj = G[p.j].lead().mono;
    if (fi.coprime(fj)) continue;
    bool chain = false;
    for (std::size_t k = 0; k < G.size() && !chain; ++k) {
      if (k == p.i || k == p.j || G[k].empty()) continue;
      if (!G[k].lead().mono.divides(p.lcm)) continue;
      const auto ik = std::minmax(p.i, k), jk = std::minmax(p.j, k);
      chain = !pending.count({ik.first, ik.second}) && !pending.count({jk.first, jk.second});
    }
    if (chain) continue;

    if (p.lcm.degree() > budget.max_degree)
      throw BudgetExhausted("Groebner degree budget exhausted (S-pair degree " + std::to_string(p.lcm.degree()) +
                            " > " + std::to_string(budget.max_degree) + ")");
    if (++processed > budget.max_pairs)
      throw BudgetExhausted("Groebner pair budget exhausted (" + std::to_string(budget.max_pairs) + " pairs)");

    auto r = detail::reduce(detail::s_polynomial(G[p.i], G[p.j], ord), G, ord);
    if (!r.empty()) add(std::move(r));
  }

  // Minimalize, then interreduce.
  std::vector<OrderedPoly> minimal;
  for (std::size_t i = 0; i < G.size(); ++i) {
    if (G[i].empty()) continue;
    bool redundant = false;
    for (std::size_t j = 0; j < G.size() && !redundant; ++j) {
      if (j == i || G[j].empty()) continue;
      const auto& a = G[j].lead().mono;
      const auto& b = G[i].lead().mono;
      if (a.divides(b) && (!(a == b) || j < i)) redundant = true;
    }
    if (!redundant) minimal.push_back(G[i]);
  }
  std::vector<Polynomial> basis;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    OrderedPoly g = minimal[i];
    Term lead = g.pop_lead();
    OrderedPoly tail = detail::reduce(std::move(g), minimal, ord, i);
    Polynomial full = tail.to_polynomial() + Polynomial::term(lead.mono, lead.coeff);
    basis.push_back(full.monic(ord));
  }
  std::sort(basis.begin(), basis.end(), [&](const Polynomial& a, const Polynomial& b) {
    return ord.greater(a.leading_term(ord).mono, b.leading_term(ord).mono);
  });
  return ideal.with_basis(ord, std::move(basis));
}

/// Fully reduced remainder of f modulo the cached basis; zero iff f is in the ideal.
inline Polynomial normal_form(const Polynomial& f, const Ideal& ideal) {
  if (!ideal.has_basis()) throw std::invalid_argument("normal_form requires a cached Groebner basis");
  return reduce(f, ideal.basis(), ideal.basis_order());
}

inline bool contains(const Ideal& ideal, const Polynomial& f) { return normal_form(f, ideal).is_zero(); }

/// Mutual containment of two ideals over the same ring.
inline bool same_ideal(const Ideal& a, const Ideal& b, const GroebnerBudget& budget = {}) {
  const Ideal ga = a.has_basis() ? a : buchberger(a, MonomialOrder::grevlex(), budget);
  const Ideal gb = b.has_basis() ? b : buchberger(b, MonomialOrder::grevlex(), budget);
  for (const auto& f : a.generators())
    if (!contains(gb, f)) return false;
  for (const auto& f : b.generators())
    if (!contains(ga, f)) return false;
  return true;
}

/// Generators of ideal ∩ K[variables not in `kill`], via a block order.
/// The result carries a grevlex basis of the elimination ideal.
inline Ideal eliminate(const Ideal& ideal, std::vector<std::size_t> kill, const GroebnerBudget& budget = {}) {
  std::sort(kill.begin(), kill.end());
  const Ideal gb = buchberger(ideal, MonomialOrder::block({kill}), budget);
  std::vector<Polynomial> kept;
  for (const auto& g : gb.basis()) {
    const auto vars = g.variables();
    const bool free = std::none_of(vars.begin(), vars.end(),
                                   [&](std::size_t v) { return std::binary_search(kill.begin(), kill.end(), v); });
    if (free) kept.push_back(g);
  }
  // Restricted to the surviving variables the block order is grevlex, so the
  // kept elements are already a reduced grevlex basis.
  const MonomialOrder grevlex = MonomialOrder::grevlex();
  std::sort(kept.begin(), kept.end(), [&](const Polynomial& a, const Polynomial& b) {
    return grevlex.greater(a.leading_term(grevlex).mono, b.leading_term(grevlex).mono);
  });
  Ideal out(ideal.ring(), kept);
  return out.with_basis(grevlex, kept);
}

/// I ∩ J by eliminating t from t·I + (1 − t)·J.
inline Ideal intersect(const Ideal& a, const Ideal& b, const GroebnerBudget& budget = {}) {
  if (!(a.ring() == b.ring())) throw std::invalid_argument("intersect: ideals over different rings");
  const std::size_t t = a.ring().size();
  const Ring extended = a.ring().with_variable("_t");
  const Polynomial tv = Polynomial::variable(t);
  std::vector<Polynomial> gens;
  for (const auto& f : a.generators()) gens.push_back(tv * f);
  for (const auto& g : b.generators()) gens.push_back((Polynomial(1) - tv) * g);
  const Ideal elim = eliminate(Ideal(extended, gens), {t}, budget);
  Ideal out(a.ring(), elim.generators());
  return out.with_basis(MonomialOrder::grevlex(), elim.basis());
}

}  // namespace detvar
