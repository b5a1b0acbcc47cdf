#pragma once

// Matroids given by a rank oracle: column matroids of exact matrices, explicit
// circuit families, restrictions, realizations of grid matroids, algebraic
// matroids of polynomial parametrizations, and point-line signatures.

#include "detvar/hypergraph.hpp"
#include "detvar/matrix.hpp"
#include "detvar/minors.hpp"
#include "detvar/polynomial.hpp"
#include "detvar/random.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <istream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace detvar {

using Mask = std::uint64_t;

inline constexpr std::size_t kCircuitEnumerationCap = 16;

/// A generic-point guard saw two random draws disagree.
class GenericityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline Mask mask_of(std::span<const std::size_t> elems) {
  Mask m = 0;
  for (auto e : elems) {
    if (e >= 64) throw std::invalid_argument("element index exceeds 63");
    m |= Mask{1} << e;
  }
  return m;
}

inline Edge elements_of(Mask m) {
  Edge out;
  for (std::size_t e = 0; m; ++e, m >>= 1)
    if (m & 1) out.push_back(e);
  return out;
}

inline Mask full_mask(std::size_t n) { return n >= 64 ? ~Mask{0} : (Mask{1} << n) - 1; }

class Matroid {
 public:
  using RankFn = std::function<std::size_t(Mask)>;

  Matroid(std::size_t n, RankFn rank) : n_(n), rank_(std::move(rank)) {
    if (n_ > 64) throw std::invalid_argument("matroid ground sets are limited to 64 elements");
  }

  std::size_t size() const { return n_; }
  std::size_t rank() const { return rank_(full_mask(n_)); }
  std::size_t rank(Mask s) const {
    if (s & ~full_mask(n_)) throw std::invalid_argument("subset outside the ground set");
    return rank_(s);
  }
  std::size_t rank(std::span<const std::size_t> s) const { return rank(mask_of(s)); }

  bool is_independent(Mask s) const { return rank(s) == static_cast<std::size_t>(std::popcount(s)); }
  bool is_dependent(Mask s) const { return !is_independent(s); }

  bool is_circuit(Mask s) const {
    if (s == 0 || is_independent(s)) return false;
    for (Mask rest = s; rest; rest &= rest - 1)
      if (!is_independent(s & ~(rest & -rest))) return false;
    return true;
  }

  /// Minimal dependent sets, by increasing size then lexicographically.
  /// A dependent set containing no smaller circuit is itself a circuit, so
  /// one rank query per candidate suffices.
  std::vector<Edge> circuits(std::size_t cap = kCircuitEnumerationCap) const {
    if (n_ > cap)
      throw std::length_error("circuit enumeration refused: ground set of " + std::to_string(n_) +
                              " exceeds the cap of " + std::to_string(cap));
    std::vector<Mask> found;
    const std::size_t top = std::min(n_, rank() + 1);
    for (std::size_t size = 1; size <= top; ++size) {
      for_each_subset(n_, size, [&](std::span<const std::size_t> s) {
        const Mask m = mask_of(s);
        for (Mask c : found)
          if ((c & m) == c) return;
        if (rank_(m) < size) found.push_back(m);
      });
    }
    std::vector<Edge> out;
    for (Mask c : found) out.push_back(elements_of(c));
    return out;
  }

  std::vector<Mask> circuit_masks(std::size_t cap = kCircuitEnumerationCap) const {
    std::vector<Mask> out;
    for (const auto& c : circuits(cap)) out.push_back(mask_of(c));
    return out;
  }

 private:
  std::size_t n_;
  RankFn rank_;
};

/// Column matroid: rank(S) is the exact rank of the columns in S.
inline Matroid matroid_from_matrix(QMatrix x) {
  auto shared = std::make_shared<const QMatrix>(std::move(x));
  const std::size_t n = shared->cols();
  return Matroid(n, [shared](Mask s) {
    if (s == 0) return std::size_t{0};
    const Edge cols = elements_of(s);
    return detvar::rank(shared->select_columns(cols));
  });
}

/// Matroid from an explicit circuit family; rank by greedy extension, which
/// is correct whenever the family satisfies the circuit axioms.
inline Matroid matroid_from_circuits(std::size_t n, const std::vector<Edge>& family) {
  auto masks = std::make_shared<std::vector<Mask>>();
  for (const auto& c : family) masks->push_back(mask_of(c));
  return Matroid(n, [masks](Mask s) {
    Mask indep = 0;
    for (Mask rest = s; rest; rest &= rest - 1) {
      const Mask candidate = indep | (rest & -rest);
      const bool creates_circuit =
          std::any_of(masks->begin(), masks->end(), [&](Mask c) { return (c & candidate) == c; });
      if (!creates_circuit) indep = candidate;
    }
    return static_cast<std::size_t>(std::popcount(indep));
  });
}

/// Antichain of nonempty sets satisfying circuit elimination: for distinct
/// C1, C2 and e ∈ C1 ∩ C2 some member lies in (C1 ∪ C2) − e.
inline bool is_circuit_family(std::size_t n, const std::vector<Edge>& family) {
  std::vector<Mask> cs;
  for (const auto& c : family) {
    if (c.empty()) return false;
    for (auto e : c)
      if (e >= n) return false;
    cs.push_back(mask_of(c));
  }
  std::sort(cs.begin(), cs.end());
  if (std::adjacent_find(cs.begin(), cs.end()) != cs.end()) return false;
  for (std::size_t i = 0; i < cs.size(); ++i)
    for (std::size_t j = 0; j < cs.size(); ++j)
      if (i != j && (cs[i] & cs[j]) == cs[i]) return false;
  for (std::size_t i = 0; i < cs.size(); ++i)
    for (std::size_t j = i + 1; j < cs.size(); ++j) {
      const Mask common = cs[i] & cs[j];
      const Mask uni = cs[i] | cs[j];
      for (Mask rest = common; rest; rest &= rest - 1) {
        const Mask target = uni & ~(rest & -rest);
        const bool ok = std::any_of(cs.begin(), cs.end(), [&](Mask c) { return (c & target) == c; });
        if (!ok) return false;
      }
    }
  return true;
}

/// min(Δ ∪ ([n] choose r+1)).
inline std::vector<Edge> minimal_with_uniform(const Hypergraph& h, std::size_t r) {
  std::vector<Edge> edges = h.edges();
  for (auto& s : subsets(h.vertex_count(), r + 1)) edges.push_back(s);
  return Hypergraph(h.vertex_count(), std::move(edges)).edges();
}

inline bool dependent_contains(const Matroid& m, const Hypergraph& h) {
  if (h.vertex_count() > m.size()) throw std::invalid_argument("hypergraph has more vertices than the matroid");
  return std::all_of(h.edges().begin(), h.edges().end(), [&](const Edge& e) { return m.is_dependent(mask_of(e)); });
}

/// Matroid on the elements of `s` (relabelled 0..|s|-1 in increasing order).
inline Matroid restriction(const Matroid& m, Edge s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  for (auto e : s)
    if (e >= m.size()) throw std::invalid_argument("restriction set outside the ground set");
  return Matroid(s.size(), [m, s](Mask sub) {
    Mask orig = 0;
    for (std::size_t b = 0; b < s.size(); ++b)
      if (sub >> b & 1) orig |= Mask{1} << s[b];
    return m.rank(orig);
  });
}

/// Realization of the grid matroid: each row i gets a random (t−1)-dimensional
/// subspace U_i of Q^d, each column j a random (s−1)-dimensional W_j, and the
/// point of cell (i, j) is a random vector of U_i ∩ W_j. Retries when the
/// draw is degenerate (rank below d or some edge of Δ^{s,t} independent).
inline QMatrix realize_grid_matroid(const GridSpec& spec, Rng& rng, std::size_t attempts = 16) {
  spec.validate();
  if (!spec.unique_minimal_regime())
    throw std::invalid_argument("grid realization requires 3 <= s <= t <= l, s <= k, t <= d <= s + t - 3");
  const std::size_t d = spec.d;
  const Hypergraph delta = grid_hypergraph(spec);
  const Grid grid = grid_matrix(spec.k, spec.l);
  for (std::size_t attempt = 0; attempt < attempts; ++attempt) {
    std::vector<QMatrix> U, W;
    for (std::size_t i = 0; i < spec.k; ++i) U.push_back(random_matrix(d, spec.t - 1, rng));
    for (std::size_t j = 0; j < spec.l; ++j) W.push_back(random_matrix(d, spec.s - 1, rng));
    QMatrix x(d, spec.k * spec.l, Rational(0));
    bool degenerate = false;
    for (std::size_t i = 0; i < spec.k && !degenerate; ++i)
      for (std::size_t j = 0; j < spec.l && !degenerate; ++j) {
        // Kernel of [U_i | -W_j] parametrizes U_i ∩ W_j.
        QMatrix stacked(d, spec.t - 1 + spec.s - 1);
        for (std::size_t r = 0; r < d; ++r) {
          for (std::size_t c = 0; c + 1 < spec.t; ++c) stacked(r, c) = U[i](r, c);
          for (std::size_t c = 0; c + 1 < spec.s; ++c) stacked(r, spec.t - 1 + c) = -W[j](r, c);
        }
        const auto ker = kernel(stacked);
        if (ker.empty()) {
          degenerate = true;
          break;
        }
        std::vector<Rational> coeffs(spec.t - 1, Rational(0));
        for (const auto& v : ker) {
          const Rational c = rng.rational();
          for (std::size_t a = 0; a + 1 < spec.t; ++a) coeffs[a] += c * v[a];
        }
        const auto point = multiply(U[i], coeffs);
        const std::size_t col = grid.vertex(i, j);
        bool nonzero = false;
        for (std::size_t r = 0; r < d; ++r) {
          x(r, col) = point[r];
          nonzero |= !is_zero(point[r]);
        }
        degenerate = !nonzero;
      }
    if (degenerate) continue;
    const Matroid m = matroid_from_matrix(x);
    if (m.rank() != d || !dependent_contains(m, delta)) continue;
    return x;
  }
  throw std::runtime_error("grid realization stayed degenerate after " + std::to_string(attempts) + " attempts");
}

/// Polynomial map θ ↦ (φ_1(θ), ..., φ_m(θ)) over a parameter ring.
struct PolyMap {
  Ring params;
  std::vector<std::string> labels;  // one per coordinate
  std::vector<Polynomial> coords;

  std::size_t parameter_count() const { return params.size(); }
  std::size_t coordinate_count() const { return coords.size(); }

  std::vector<Rational> evaluate(std::span<const Rational> theta) const {
    std::vector<Rational> out;
    for (const auto& f : coords) out.push_back(f.evaluate(theta));
    return out;
  }

  /// m × r matrix of ∂φ_i/∂θ_j at θ.
  QMatrix jacobian(std::span<const Rational> theta) const {
    QMatrix j(coords.size(), params.size(), Rational(0));
    for (std::size_t i = 0; i < coords.size(); ++i)
      for (std::size_t v = 0; v < params.size(); ++v) j(i, v) = coords[i].derivative(v).evaluate(theta);
    return j;
  }
};

/// File form: "params a b c" then one "label = polynomial" per line.
inline PolyMap parse_polymap(std::istream& in) {
  PolyMap map;
  std::string line;
  bool have_params = false;
  while (std::getline(in, line)) {
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (!have_params) {
      std::istringstream is(line);
      std::string head, name;
      is >> head;
      if (head != "params") throw std::invalid_argument("parametrization must start with a 'params' line");
      std::vector<std::string> names;
      while (is >> name) names.push_back(name);
      map.params = Ring(std::move(names));
      have_params = true;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("expected 'label = polynomial', got: " + line);
    std::string label = line.substr(0, eq);
    label.erase(0, label.find_first_not_of(" \t"));
    label.erase(label.find_last_not_of(" \t") + 1);
    map.labels.push_back(label);
    map.coords.push_back(parse_polynomial(line.substr(eq + 1), map.params));
  }
  if (!have_params) throw std::invalid_argument("empty parametrization");
  return map;
}

/// (A·B)_{ij} for A m × r, B r × n; coordinates labelled "ij" (1-based).
inline PolyMap low_rank_parametrization(std::size_t m, std::size_t n, std::size_t r) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= m; ++i)
    for (std::size_t a = 1; a <= r; ++a) names.push_back("a_" + std::to_string(i) + "_" + std::to_string(a));
  for (std::size_t a = 1; a <= r; ++a)
    for (std::size_t j = 1; j <= n; ++j) names.push_back("b_" + std::to_string(a) + "_" + std::to_string(j));
  PolyMap map{Ring(std::move(names)), {}, {}};
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Polynomial f;
      for (std::size_t a = 0; a < r; ++a)
        f += Polynomial::variable(i * r + a) * Polynomial::variable(m * r + a * n + j);
      map.coords.push_back(f);
      map.labels.push_back(std::to_string(i + 1) + std::to_string(j + 1));
    }
  return map;
}

/// For d = 3 and s = t = 3: rows and columns of the grid are planes through
/// the origin with normals u_i and w_j, and the point of cell (i, j) is
/// c_ij · (u_i × w_j). Coordinates are the 3kℓ entries of the realization,
/// column-major by grid vertex (labels "v<vertex>_<row>").
inline PolyMap grid_cross_product_parametrization(const GridSpec& spec) {
  spec.validate();
  if (spec.d != 3 || spec.s != 3 || spec.t != 3)
    throw std::invalid_argument("cross-product parametrization needs d = s = t = 3");
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= spec.k; ++i)
    for (std::size_t r = 1; r <= 3; ++r) names.push_back("u_" + std::to_string(i) + "_" + std::to_string(r));
  for (std::size_t j = 1; j <= spec.l; ++j)
    for (std::size_t r = 1; r <= 3; ++r) names.push_back("w_" + std::to_string(j) + "_" + std::to_string(r));
  for (std::size_t v = 1; v <= spec.k * spec.l; ++v) names.push_back("c_" + std::to_string(v));
  PolyMap map{Ring(std::move(names)), {}, {}};
  auto u = [&](std::size_t i, std::size_t r) { return Polynomial::variable(i * 3 + r); };
  auto w = [&](std::size_t j, std::size_t r) { return Polynomial::variable(spec.k * 3 + j * 3 + r); };
  const Grid grid = grid_matrix(spec.k, spec.l);
  std::vector<std::vector<Polynomial>> cols(spec.k * spec.l);
  for (std::size_t i = 0; i < spec.k; ++i)
    for (std::size_t j = 0; j < spec.l; ++j) {
      const std::size_t v = grid.vertex(i, j);
      const Polynomial c = Polynomial::variable(spec.k * 3 + spec.l * 3 + v);
      cols[v] = {c * (u(i, 1) * w(j, 2) - u(i, 2) * w(j, 1)), c * (u(i, 2) * w(j, 0) - u(i, 0) * w(j, 2)),
                 c * (u(i, 0) * w(j, 1) - u(i, 1) * w(j, 0))};
    }
  for (std::size_t v = 0; v < cols.size(); ++v)
    for (std::size_t r = 0; r < 3; ++r) {
      map.coords.push_back(cols[v][r]);
      map.labels.push_back("v" + std::to_string(v + 1) + "_" + std::to_string(r + 1));
    }
  return map;
}

namespace detail {

inline std::vector<Rational> random_point(std::size_t n, Rng& rng) {
  std::vector<Rational> p(n);
  for (auto& x : p) x = rng.rational();
  return p;
}

}  // namespace detail

/// Algebraic matroid of the image of φ on its coordinates: S is independent
/// iff the Jacobian rows of S are independent at a generic parameter point.
///
/// Two random points are drawn. Construction compares their circuit sets
/// (ground sets up to the enumeration cap, full rank otherwise) and retries
/// on disagreement; afterwards every rank query is answered at both points
/// and a disagreement throws GenericityError.
inline Matroid algebraic_matroid(const PolyMap& phi, Rng& rng, std::size_t attempts = 4) {
  const std::size_t m = phi.coordinate_count(), r = phi.parameter_count();
  for (std::size_t attempt = 0; attempt < attempts; ++attempt) {
    const Matroid first = matroid_from_matrix(phi.jacobian(detail::random_point(r, rng)).transposed());
    const Matroid second = matroid_from_matrix(phi.jacobian(detail::random_point(r, rng)).transposed());
    const bool agree = m <= kCircuitEnumerationCap ? first.circuits() == second.circuits() : first.rank() == second.rank();
    if (!agree) continue;
    return Matroid(m, [first, second](Mask s) {
      const auto a = first.rank(s), b = second.rank(s);
      if (a != b) throw GenericityError("algebraic matroid: rank differs between the two generic points");
      return a;
    });
  }
  throw GenericityError("algebraic matroid: random points kept disagreeing after " + std::to_string(attempts) + " attempts");
}

/// ⟨d-minors of Y⟩ + ⟨∏_{i∈I} y_ij : |I| = s⟩ + ⟨∏_{j∈J} y_ij : |J| = t⟩ over
/// the k × ℓ matrix y_i_j, families in that order.
inline Ideal sparse_lowrank_ideal(const GridSpec& spec) {
  if (spec.d < 1 || spec.d > std::min(spec.k, spec.l) || spec.s < 1 || spec.s > spec.k || spec.t < 1 || spec.t > spec.l)
    throw std::invalid_argument("sparse low-rank ideal needs d <= min(k, l), s <= k, t <= l");
  const SymbolicMatrix y = generic_matrix(spec.k, spec.l);
  std::vector<Polynomial> gens = all_minors(y, spec.d);
  for (std::size_t j = 0; j < spec.l; ++j)
    for_each_subset(spec.k, spec.s, [&](std::span<const std::size_t> rows) {
      Polynomial p(1);
      for (auto i : rows) p *= y(i, j);
      gens.push_back(p);
    });
  for (std::size_t i = 0; i < spec.k; ++i)
    for_each_subset(spec.l, spec.t, [&](std::span<const std::size_t> cols) {
      Polynomial p(1);
      for (auto j : cols) p *= y(i, j);
      gens.push_back(p);
    });
  return Ideal(Ring::matrix("y", spec.k, spec.l), dedup_up_to_sign(gens));
}

/// Coarse invariant of a planar point configuration (columns of a 3 × n
/// matrix, zero columns ignored): the rank-2 flats holding at least three
/// points, their sizes, and how many such lines pass through each point that
/// lies on two or more of them.
struct ArrangementSignature {
  std::size_t lines = 0;
  std::vector<std::size_t> points_per_line;        // ascending
  std::vector<std::size_t> lines_per_multipoint;   // ascending
  std::vector<Edge> line_sets;                     // the lines themselves

  friend bool operator==(const ArrangementSignature& a, const ArrangementSignature& b) {
    return a.lines == b.lines && a.points_per_line == b.points_per_line &&
           a.lines_per_multipoint == b.lines_per_multipoint;
  }
};

inline ArrangementSignature arrangement_signature(const QMatrix& x) {
  if (x.rows() != 3) throw std::invalid_argument("arrangement signature needs points in the projective plane (d = 3)");
  const std::size_t n = x.cols();
  std::vector<std::size_t> pts;
  for (std::size_t j = 0; j < n; ++j) {
    const std::array<std::size_t, 1> c{j};
    if (rank(x.select_columns(c)) == 1) pts.push_back(j);
  }
  std::vector<Mask> lines;
  for (std::size_t a = 0; a < pts.size(); ++a)
    for (std::size_t b = a + 1; b < pts.size(); ++b) {
      const std::array<std::size_t, 2> ab{pts[a], pts[b]};
      if (rank(x.select_columns(ab)) != 2) continue;
      Mask flat = 0;
      for (auto p : pts) {
        const std::array<std::size_t, 3> abp{pts[a], pts[b], p};
        if (p == pts[a] || p == pts[b] || rank(x.select_columns(abp)) == 2) flat |= Mask{1} << p;
      }
      if (std::popcount(flat) >= 3 && std::find(lines.begin(), lines.end(), flat) == lines.end()) lines.push_back(flat);
    }
  std::sort(lines.begin(), lines.end());
  ArrangementSignature sig;
  sig.lines = lines.size();
  for (Mask l : lines) {
    sig.points_per_line.push_back(static_cast<std::size_t>(std::popcount(l)));
    sig.line_sets.push_back(elements_of(l));
  }
  std::sort(sig.points_per_line.begin(), sig.points_per_line.end());
  for (auto p : pts) {
    const auto through = static_cast<std::size_t>(
        std::count_if(lines.begin(), lines.end(), [&](Mask l) { return (l >> p) & 1; }));
    if (through >= 2) sig.lines_per_multipoint.push_back(through);
  }
  std::sort(sig.lines_per_multipoint.begin(), sig.lines_per_multipoint.end());
  return sig;
}

/// Ground size on the first line, then one circuit per line (1-based).
inline std::string format_circuits(std::size_t n, const std::vector<Edge>& circuits) {
  std::ostringstream os;
  os << n << '\n';
  for (const auto& c : circuits) {
    for (std::size_t i = 0; i < c.size(); ++i) os << (i ? " " : "") << c[i] + 1;
    os << '\n';
  }
  return os.str();
}

}  // namespace detvar
