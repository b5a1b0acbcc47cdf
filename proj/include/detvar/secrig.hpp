#pragma once

// Joins and secants via tangent spans, mixture sampling, and bar-joint
// rigidity matrices.

#include "detvar/matrix.hpp"
#include "detvar/matroid.hpp"
#include "detvar/minors.hpp"
#include "detvar/random.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace detvar {

struct TangentSample {
  std::vector<Rational> point;
  QMatrix basis;  // ambient × dim, independent columns
};

struct TangentModel {
  std::size_t ambient = 0;
  std::function<TangentSample(Rng&)> sample;
};

/// Image of a parametrization: the point φ(θ) and the pivot columns of the
/// Jacobian at θ.
inline TangentModel tangent_model(PolyMap phi) {
  const std::size_t ambient = phi.coordinate_count();
  return {ambient, [phi = std::move(phi)](Rng& rng) {
            std::vector<Rational> theta(phi.parameter_count());
            for (auto& x : theta) x = rng.rational();
            const QMatrix j = phi.jacobian(theta);
            QMatrix echelon = j;
            const auto pivots = detail::echelonize(echelon, false);
            return TangentSample{phi.evaluate(theta), j.select_columns(pivots)};
          }};
}

/// Affine cone over the Segre variety of rank-1 m × n matrices.
inline TangentModel segre_model(std::size_t m, std::size_t n) { return tangent_model(low_rank_parametrization(m, n, 1)); }

/// Rank of the span of the tangent spaces at k random points: the dimension
/// of the affine cone over Sec^k. Computed twice from independent draws; the
/// two must agree, and every draw must give the same tangent dimension.
inline std::size_t secant_dimension(const TangentModel& model, std::size_t k, Rng& rng, std::size_t attempts = 4) {
  if (k < 1) throw std::invalid_argument("secant dimension needs k >= 1");
  auto draw = [&](std::optional<std::size_t>& tangent_dim) {
    std::vector<QMatrix> bases;
    std::size_t cols = 0;
    for (std::size_t i = 0; i < k; ++i) {
      bases.push_back(model.sample(rng).basis);
      if (bases.back().rows() != model.ambient) throw std::logic_error("tangent basis has the wrong ambient size");
      if (tangent_dim && *tangent_dim != bases.back().cols()) return std::optional<std::size_t>{};
      tangent_dim = bases.back().cols();
      cols += bases.back().cols();
    }
    QMatrix stacked(model.ambient, cols);
    std::size_t at = 0;
    for (const auto& b : bases)
      for (std::size_t c = 0; c < b.cols(); ++c, ++at)
        for (std::size_t r = 0; r < b.rows(); ++r) stacked(r, at) = b(r, c);
    return std::optional<std::size_t>{rank(stacked)};
  };
  for (std::size_t attempt = 0; attempt < attempts; ++attempt) {
    std::optional<std::size_t> tangent_dim;
    const auto first = draw(tangent_dim);
    const auto second = draw(tangent_dim);
    if (first && second && *first == *second) return *first;
  }
  throw GenericityError("secant dimension: random draws kept disagreeing after " + std::to_string(attempts) + " attempts");
}

/// Σ λ_i a_i b_iᵀ with λ, a_i, b_i in the interiors of their simplices.
inline QMatrix mixture_sample(std::size_t m, std::size_t n, std::size_t k, Rng& rng) {
  if (k < 1 || m < 1 || n < 1) throw std::invalid_argument("mixture sample needs m, n, k >= 1");
  const auto lambda = rng.simplex_interior(k);
  QMatrix out(m, n, Rational(0));
  for (std::size_t c = 0; c < k; ++c) {
    const auto a = rng.simplex_interior(m);
    const auto b = rng.simplex_interior(n);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) out(i, j) += lambda[c] * a[i] * b[j];
  }
  return out;
}

/// u vᵀ with random rational u, v.
inline QMatrix rank_one_sample(std::size_t m, std::size_t n, Rng& rng) {
  return random_matrix(m, 1, rng) * random_matrix(1, n, rng);
}

using PointSampler = std::function<QMatrix(Rng&)>;

inline QMatrix join_point(const QMatrix& u, const QMatrix& v, const Rational& lambda) {
  if (u.rows() != v.rows() || u.cols() != v.cols()) throw std::invalid_argument("join: points live in different spaces");
  return scaled(u, lambda) + scaled(v, Rational(1) - lambda);
}

/// λu + (1 − λ)v; λ is any random rational for a join and lies in [0, 1]
/// when `mixture` is set.
inline QMatrix join_sample(const PointSampler& u_sampler, const PointSampler& v_sampler, Rng& rng, bool mixture = false) {
  const QMatrix u = u_sampler(rng);
  const QMatrix v = v_sampler(rng);
  const Rational lambda = mixture ? rng.unit_rational() : rng.rational();
  return join_point(u, v, lambda);
}

struct Framework {
  std::size_t n = 0, d = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::vector<std::vector<Rational>> points;

  void validate() const {
    if (d < 1) throw std::invalid_argument("framework dimension must be >= 1");
    if (points.size() != n) throw std::invalid_argument("framework needs one point per vertex");
    for (const auto& p : points)
      if (p.size() != d) throw std::invalid_argument("framework point has the wrong dimension");
    for (auto [u, v] : edges) {
      if (u >= n || v >= n) throw std::invalid_argument("framework edge vertex out of range");
      if (u == v) throw std::invalid_argument("framework edge is a loop");
    }
  }
};

inline std::vector<std::pair<std::size_t, std::size_t>> complete_graph(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> e;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) e.emplace_back(u, v);
  return e;
}

inline Framework random_framework(std::size_t n, std::size_t d, std::vector<std::pair<std::size_t, std::size_t>> edges,
                                  Rng& rng) {
  Framework fw{n, d, std::move(edges), {}};
  for (std::size_t v = 0; v < n; ++v) {
    std::vector<Rational> p(d);
    for (auto& x : p) x = rng.rational();
    fw.points.push_back(std::move(p));
  }
  return fw;
}

/// Row per edge {u, v}: p_u − p_v in u's block, p_v − p_u in v's block.
inline QMatrix rigidity_matrix(const Framework& fw) {
  fw.validate();
  QMatrix r(fw.edges.size(), fw.d * fw.n, Rational(0));
  for (std::size_t e = 0; e < fw.edges.size(); ++e) {
    const auto [u, v] = fw.edges[e];
    if (fw.points[u] == fw.points[v])
      throw std::invalid_argument("rigidity matrix: edge " + std::to_string(u + 1) + "-" + std::to_string(v + 1) +
                                  " joins coincident points");
    for (std::size_t a = 0; a < fw.d; ++a) {
      const Rational diff = fw.points[u][a] - fw.points[v][a];
      r(e, u * fw.d + a) = diff;
      r(e, v * fw.d + a) = -diff;
    }
  }
  return r;
}

/// Kernel vectors of the rigidity matrix coming from Euclidean motions:
/// the d translations, and for d ≤ 3 the C(d, 2) infinitesimal rotations.
inline std::vector<std::vector<Rational>> trivial_motions(const Framework& fw) {
  std::vector<std::vector<Rational>> out;
  for (std::size_t a = 0; a < fw.d; ++a) {
    std::vector<Rational> t(fw.d * fw.n, Rational(0));
    for (std::size_t v = 0; v < fw.n; ++v) t[v * fw.d + a] = 1;
    out.push_back(std::move(t));
  }
  if (fw.d <= 3)
    for (std::size_t a = 0; a < fw.d; ++a)
      for (std::size_t b = a + 1; b < fw.d; ++b) {
        std::vector<Rational> rot(fw.d * fw.n, Rational(0));
        for (std::size_t v = 0; v < fw.n; ++v) {
          rot[v * fw.d + a] = -fw.points[v][b];
          rot[v * fw.d + b] = fw.points[v][a];
        }
        out.push_back(std::move(rot));
      }
  return out;
}

/// "n d" header, n coordinate lines, then "u v" edge lines (1-based).
inline std::string format_framework(const Framework& fw) {
  std::ostringstream os;
  os << fw.n << ' ' << fw.d << '\n';
  for (const auto& p : fw.points) {
    for (std::size_t a = 0; a < p.size(); ++a) os << (a ? " " : "") << to_string(p[a]);
    os << '\n';
  }
  for (auto [u, v] : fw.edges) os << u + 1 << ' ' << v + 1 << '\n';
  return os.str();
}

inline Framework parse_framework(std::istream& in) {
  std::vector<std::vector<std::string>> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream is(line);
    std::vector<std::string> tok;
    std::string t;
    while (is >> t) tok.push_back(t);
    if (!tok.empty()) lines.push_back(std::move(tok));
  }
  if (lines.empty() || lines[0].size() != 2) throw std::invalid_argument("framework text must start with 'n d'");
  Framework fw;
  fw.n = std::stoul(lines[0][0]);
  fw.d = std::stoul(lines[0][1]);
  if (lines.size() < fw.n + 1) throw std::invalid_argument("framework text is missing vertex coordinates");
  for (std::size_t v = 0; v < fw.n; ++v) {
    if (lines[v + 1].size() != fw.d) throw std::invalid_argument("framework vertex line has the wrong dimension");
    std::vector<Rational> p;
    for (const auto& s : lines[v + 1]) p.push_back(parse_rational(s));
    fw.points.push_back(std::move(p));
  }
  for (std::size_t i = fw.n + 1; i < lines.size(); ++i) {
    if (lines[i].size() != 2) throw std::invalid_argument("framework edge line needs two vertices");
    const long u = std::stol(lines[i][0]), v = std::stol(lines[i][1]);
    if (u < 1 || v < 1) throw std::invalid_argument("framework vertices are 1-based");
    fw.edges.emplace_back(static_cast<std::size_t>(u - 1), static_cast<std::size_t>(v - 1));
  }
  fw.validate();
  return fw;
}

struct RigidityReport {
  std::size_t n = 0, d = 0;
  std::size_t expected_rank = 0, rank = 0;
  std::size_t kd2_checked = 0, kd2_circuits = 0;  // copies of K_{d+2}
  std::size_t motions_checked = 0, motions_in_kernel = 0;

  bool passed() const {
    return rank == expected_rank && kd2_circuits == kd2_checked && motions_in_kernel == motions_checked;
  }
};

inline constexpr std::size_t kRigidityCircuitVertexCap = 8;

/// Rank of K_n's rigidity matrix at a random configuration against
/// dn − C(d+1, 2); every K_{d+2} copy must be a circuit of the row matroid
/// (n ≤ 8); translations and rotations must lie in the kernel. The rank is
/// recomputed at a second configuration and must agree.
inline RigidityReport generic_rigidity_check(std::size_t n, std::size_t d, Rng& rng, std::size_t attempts = 4) {
  if (d < 1 || n < d + 1) throw std::invalid_argument("rigidity check needs d >= 1 and n >= d + 1");
  const auto edges = complete_graph(n);
  for (std::size_t attempt = 0; attempt < attempts; ++attempt) {
    const Framework fw = random_framework(n, d, edges, rng);
    const Framework other = random_framework(n, d, edges, rng);
    const QMatrix r = rigidity_matrix(fw);
    RigidityReport rep{n, d, d * n - d * (d + 1) / 2, detvar::rank(r)};
    if (rep.rank != detvar::rank(rigidity_matrix(other))) continue;

    if (n <= kRigidityCircuitVertexCap) {
      const Matroid rows = matroid_from_matrix(r.transposed());
      for_each_subset(n, d + 2, [&](std::span<const std::size_t> verts) {
        Mask m = 0;
        for (std::size_t e = 0; e < edges.size(); ++e) {
          const bool inside = std::binary_search(verts.begin(), verts.end(), edges[e].first) &&
                              std::binary_search(verts.begin(), verts.end(), edges[e].second);
          if (inside) m |= Mask{1} << e;
        }
        ++rep.kd2_checked;
        if (rows.is_circuit(m)) ++rep.kd2_circuits;
      });
    }
    for (const auto& v : trivial_motions(fw)) {
      ++rep.motions_checked;
      const auto image = multiply(r, v);
      if (std::all_of(image.begin(), image.end(), [](const Rational& q) { return is_zero(q); })) ++rep.motions_in_kernel;
    }
    return rep;
  }
  throw GenericityError("rigidity check: configurations kept disagreeing after " + std::to_string(attempts) + " attempts");
}

}  // namespace detvar
