#pragma once

// Hypergraphs on [n], their determinantal ideals and varieties, the grid
// family, and the identification of grid ideals with CI ideals.
//
// Vertices are 0-based internally; text formats and grid labels are 1-based.

#include "detvar/cimodel.hpp"
#include "detvar/groebner.hpp"
#include "detvar/matrix.hpp"
#include "detvar/minors.hpp"

#include <algorithm>
#include <array>
#include <span>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace detvar {

using Edge = std::vector<std::size_t>;

class Hypergraph {
 public:
  Hypergraph() = default;

  /// Edges are sorted, deduplicated and reduced to the inclusion-minimal ones.
  Hypergraph(std::size_t n, std::vector<Edge> edges) : n_(n) {
    for (auto& e : edges) {
      std::sort(e.begin(), e.end());
      e.erase(std::unique(e.begin(), e.end()), e.end());
      if (e.empty()) throw std::invalid_argument("hypergraph edge must be nonempty");
      if (e.back() >= n_) throw std::invalid_argument("hypergraph edge vertex out of range");
    }
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
      return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    for (auto& e : edges) {
      const bool dominated = std::any_of(edges_.begin(), edges_.end(), [&](const Edge& f) {
        return std::includes(e.begin(), e.end(), f.begin(), f.end());
      });
      if (!dominated) edges_.push_back(std::move(e));
    }
    std::sort(edges_.begin(), edges_.end());
  }

  std::size_t vertex_count() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }

  friend bool operator==(const Hypergraph& a, const Hypergraph& b) { return a.n_ == b.n_ && a.edges_ == b.edges_; }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
};

/// First line n, then one edge per line as sorted 1-based integers.
inline std::string format_hypergraph(const Hypergraph& h) {
  std::ostringstream os;
  os << h.vertex_count() << '\n';
  for (const auto& e : h.edges()) {
    for (std::size_t i = 0; i < e.size(); ++i) os << (i ? " " : "") << e[i] + 1;
    os << '\n';
  }
  return os.str();
}

inline Hypergraph parse_hypergraph(std::istream& in) {
  std::string line;
  std::optional<std::size_t> n;
  std::vector<Edge> edges;
  while (std::getline(in, line)) {
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream is(line);
    std::vector<std::size_t> vals;
    long v;
    while (is >> v) {
      if (v < 1) throw std::invalid_argument("hypergraph vertices are 1-based");
      vals.push_back(static_cast<std::size_t>(v));
    }
    if (vals.empty()) continue;
    if (!n) {
      if (vals.size() != 1) throw std::invalid_argument("hypergraph text must start with the vertex count");
      n = vals[0];
      continue;
    }
    for (auto& x : vals) --x;
    edges.push_back(vals);
  }
  if (!n) throw std::invalid_argument("empty hypergraph text");
  return Hypergraph(*n, std::move(edges));
}

/// The k × ℓ label matrix Y(i, j) = (j − 1)k + i (1-based labels), with its
/// rows R_i and columns C_j as 0-based vertex sets.
struct Grid {
  std::size_t k = 0, l = 0;
  Matrix<std::size_t> labels;
  std::vector<Edge> rows;
  std::vector<Edge> cols;

  // 0-based vertex of grid cell (i, j), both 0-based.
  std::size_t vertex(std::size_t i, std::size_t j) const { return j * k + i; }
};

inline Grid grid_matrix(std::size_t k, std::size_t l) {
  if (k < 1 || l < 1) throw std::invalid_argument("grid needs k, l >= 1");
  Grid g{k, l, Matrix<std::size_t>(k, l), std::vector<Edge>(k), std::vector<Edge>(l)};
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < l; ++j) {
      g.labels(i, j) = j * k + i + 1;
      g.rows[i].push_back(j * k + i);
      g.cols[j].push_back(j * k + i);
    }
  return g;
}

inline std::string format_grid(const Grid& g) {
  std::ostringstream os;
  for (std::size_t i = 0; i < g.k; ++i) {
    for (std::size_t j = 0; j < g.l; ++j) os << (j ? " " : "") << g.labels(i, j);
    os << '\n';
  }
  return os.str();
}

struct GridSpec {
  std::size_t s = 1, t = 1, k = 1, l = 1, d = 1;

  void validate() const {
    if (k < 1 || l < 1 || d < 1) throw std::invalid_argument("grid spec needs k, l, d >= 1");
    if (s < 1 || s > k) throw std::invalid_argument("grid spec needs 1 <= s <= k");
    if (t < 1 || t > l) throw std::invalid_argument("grid spec needs 1 <= t <= l");
  }

  /// 3 ≤ s ≤ t ≤ ℓ, s ≤ k, t ≤ d ≤ s + t − 3.
  bool unique_minimal_regime() const {
    return 3 <= s && s <= t && t <= l && s <= k && t <= d && d + 3 <= s + t;
  }
};

/// Δ^{s,t}: all t-subsets of grid rows and s-subsets of grid columns.
inline Hypergraph grid_hypergraph(const GridSpec& spec) {
  spec.validate();
  const Grid g = grid_matrix(spec.k, spec.l);
  std::vector<Edge> edges;
  auto add_subsets = [&](const Edge& set, std::size_t size) {
    for_each_subset(set.size(), size, [&](std::span<const std::size_t> pick) {
      Edge e;
      for (auto p : pick) e.push_back(set[p]);
      edges.push_back(std::move(e));
    });
  };
  for (const auto& r : g.rows) add_subsets(r, spec.t);
  for (const auto& c : g.cols) add_subsets(c, spec.s);
  return Hypergraph(spec.k * spec.l, std::move(edges));
}

/// Generators [A|B] for every edge B with |B| ≤ d and every A ⊆ [d] of the
/// same size, over the generic d × n matrix (ring x_i_j). Edges larger than d
/// contribute nothing.
inline Ideal hypergraph_ideal(const Hypergraph& h, std::size_t d) {
  const std::size_t n = h.vertex_count();
  const SymbolicMatrix x = generic_matrix(d, n);
  std::vector<Polynomial> gens;
  for (const auto& e : h.edges()) {
    if (e.size() > d) continue;
    for_each_subset(d, e.size(), [&](std::span<const std::size_t> rows) { gens.push_back(minor(x, rows, e)); });
  }
  return Ideal(Ring::matrix("x", d, n), dedup_up_to_sign(gens));
}

/// X ∈ V_Δ iff rank(X_F) < |F| for every edge F (exact).
inline bool in_variety(const Hypergraph& h, const QMatrix& x) {
  if (x.cols() != h.vertex_count()) throw std::invalid_argument("in_variety: column count differs from vertex count");
  for (const auto& e : h.edges())
    if (rank(x.select_columns(e)) >= e.size()) return false;
  return true;
}

/// Coordinate map from a row-major tensor of the given shape to the matrix
/// whose rows are the first index and whose columns run over the remaining
/// indices with the second index fastest: p_{a,b,c,...} goes to
/// x_{a, b + n_1 (c + n_2 (...))}.
inline std::vector<std::size_t> tensor_to_matrix_map(std::span<const std::size_t> shape) {
  if (shape.empty()) throw std::invalid_argument("tensor_to_matrix_map: empty shape");
  std::size_t total = 1;
  for (auto s : shape) total *= s;
  const std::size_t cols = total / shape[0];
  std::vector<std::size_t> map(total);
  std::vector<std::size_t> idx(shape.size(), 0);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t col = 0, stride = 1;
    for (std::size_t a = 1; a < shape.size(); ++a) {
      col += idx[a] * stride;
      stride *= shape[a];
    }
    map[flat] = idx[0] * cols + col;
    for (std::size_t a = shape.size(); a-- > 0;) {
      if (++idx[a] < shape[a]) break;
      idx[a] = 0;
    }
  }
  return map;
}

/// Observed X, Y1, Y2 with cardinalities d, k, ℓ; hidden H1, H2 with s − 1, t − 1;
/// statements X ⊥⊥ Y1 | {Y2, H1} and X ⊥⊥ Y2 | {Y1, H2}. `coordinate_map`
/// sends the coordinate p_{x,y1,y2} to x_{x, (y2−1)k + y1} of the d × kℓ matrix.
struct GridCorrespondence {
  CIProblem problem;
  std::vector<std::size_t> coordinate_map;
};

inline GridCorrespondence grid_ci_correspondence(const GridSpec& spec) {
  spec.validate();
  if (spec.s < 2 || spec.t < 2) throw std::invalid_argument("grid correspondence needs s, t >= 2 (hidden cardinality >= 1)");
  DiscreteModel model({{"X", spec.d, false},
                       {"Y1", spec.k, false},
                       {"Y2", spec.l, false},
                       {"H1", spec.s - 1, true},
                       {"H2", spec.t - 1, true}});
  std::vector<CIStatement> stmts{{{0}, {1}, {2, 3}}, {{0}, {2}, {1, 4}}};
  for (const auto& st : stmts) st.validate(model);
  const std::array<std::size_t, 3> shape{spec.d, spec.k, spec.l};
  return {{std::move(model), std::move(stmts)}, tensor_to_matrix_map(shape)};
}

/// Δ = {123, 456, 789, 1̄2̄3̄, 147, 1̄14, 1̄47, 1̄17, 258, 2̄58, 2̄28, 2̄25, 369, 3̄69, 3̄39, 3̄36}
/// on 12 vertices, with 1̄, 2̄, 3̄ relabelled 10, 11, 12.
inline Hypergraph example32_hypergraph() {
  const std::vector<Edge> one_based{{1, 2, 3},  {4, 5, 6},   {7, 8, 9},  {10, 11, 12}, {1, 4, 7},  {10, 1, 4},
                                    {10, 4, 7}, {10, 1, 7},  {2, 5, 8},  {11, 5, 8},   {11, 2, 8}, {11, 2, 5},
                                    {3, 6, 9},  {12, 6, 9},  {12, 3, 9}, {12, 3, 6}};
  std::vector<Edge> edges;
  for (auto e : one_based) {
    for (auto& v : e) --v;
    edges.push_back(e);
  }
  return Hypergraph(12, std::move(edges));
}

/// {123, 145, 167} on 7 vertices.
inline Hypergraph example31_hypergraph() { return Hypergraph(7, {{0, 1, 2}, {0, 3, 4}, {0, 5, 6}}); }

}  // namespace detvar
