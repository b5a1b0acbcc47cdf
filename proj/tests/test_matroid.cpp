#include "support.hpp"

#include <gtest/gtest.h>

#include <fstream>

using namespace detvar;

namespace {

std::vector<Edge> sorted(std::vector<Edge> v) {
  std::sort(v.begin(), v.end());
  return v;
}

QMatrix columns(const std::vector<std::vector<Rational>>& cols) {
  QMatrix m(cols[0].size(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < cols[j].size(); ++i) m(i, j) = cols[j][i];
  return m;
}

std::vector<Rational> cross(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

std::vector<Rational> random_vec(Rng& rng) { return {rng.rational(), rng.rational(), rng.rational()}; }

std::vector<Rational> combo(Rng& rng, const std::vector<Rational>& a, const std::vector<Rational>& b) {
  const Rational s = rng.rational(), t = rng.rational();
  return {s * a[0] + t * b[0], s * a[1] + t * b[1], s * a[2] + t * b[2]};
}

}  // namespace

TEST(Matroid, IdentityHasNoCircuits) {
  const Matroid m = matroid_from_matrix(identity_matrix(3));
  EXPECT_EQ(m.rank(), 3u);
  EXPECT_TRUE(m.circuits().empty());
}

TEST(Matroid, ParallelAndLoopElements) {
  const QMatrix x{{1, 2, 0, 1}, {3, 6, 0, 0}};
  const Matroid m = matroid_from_matrix(x);
  EXPECT_EQ(sorted(m.circuits()), (std::vector<Edge>{{0, 1}, {2}}));
  EXPECT_TRUE(dependent_contains(m, Hypergraph(4, {{2}})));
}

TEST(Matroid, RankOracleMatchesMinorRankOnAllSubsets) {
  Rng rng(1);
  for (int rep = 0; rep < 4; ++rep) {
    const QMatrix x = testing_support::small_matrix(rng, 3, 8, -1, 1);
    const Matroid m = matroid_from_matrix(x);
    for (Mask s = 0; s < (Mask{1} << 8); ++s) {
      const Edge cols = elements_of(s);
      const std::size_t want = cols.empty() ? 0 : testing_support::rank_by_minors(x.select_columns(cols));
      ASSERT_EQ(m.rank(s), want);
    }
  }
}

TEST(Matroid, RankAxiomsHold) {
  Rng rng(2);
  for (int rep = 0; rep < 5; ++rep) {
    const Matroid m = matroid_from_matrix(testing_support::small_matrix(rng, 3, 10, -1, 1));
    for (int t = 0; t < 300; ++t) {
      const Mask a = rng.below(1024), b = rng.below(1024);
      const std::size_t e = rng.below(10);
      EXPECT_LE(m.rank(a), static_cast<std::size_t>(std::popcount(a)));
      EXPECT_LE(m.rank(a & b), m.rank(a));  // monotone
      EXPECT_LE(m.rank(a | b) + m.rank(a & b), m.rank(a) + m.rank(b));  // submodular
      const auto grow = m.rank(a | (Mask{1} << e)) - m.rank(a);
      EXPECT_LE(grow, 1u);  // unit increase
    }
  }
}

TEST(Matroid, CircuitFamilyDefinesTheSameMatroid) {
  Rng rng(3);
  for (int rep = 0; rep < 5; ++rep) {
    const Matroid m = matroid_from_matrix(testing_support::small_matrix(rng, 3, 7, -1, 1));
    const auto circuits = m.circuits();
    EXPECT_TRUE(is_circuit_family(7, circuits));
    const Matroid from_c = matroid_from_circuits(7, circuits);
    for (Mask s = 0; s < 128; ++s) ASSERT_EQ(from_c.rank(s), m.rank(s));
  }
}

TEST(Matroid, CircuitAxiomChecks) {
  EXPECT_TRUE(is_circuit_family(3, {{0, 1}, {1, 2}, {0, 2}}));
  EXPECT_FALSE(is_circuit_family(3, {{0, 1}, {0, 1, 2}}));
  EXPECT_FALSE(is_circuit_family(4, {{0, 1, 2}, {0, 1, 3}}));  // elimination needs a circuit in {0, 2, 3}
  EXPECT_FALSE(is_circuit_family(3, {{}}));
  EXPECT_FALSE(is_circuit_family(3, {{0, 3}}));
}

TEST(Matroid, EnumerationCapIsEnforced) {
  Rng rng(4);
  const Matroid m = matroid_from_matrix(random_matrix(2, 17, rng));
  EXPECT_THROW(m.circuits(), std::length_error);
  EXPECT_EQ(m.rank(), 2u);
}

TEST(Matroid, ConcurrentLinesFixture) {
  std::ifstream in(DETVAR_DATA "/concurrent_lines.mat");
  const QMatrix x = parse_matrix(in);
  const Matroid m = matroid_from_matrix(x);
  std::vector<Edge> triples;
  for (const auto& c : m.circuits())
    if (c.size() == 3) triples.push_back(c);
  EXPECT_EQ(sorted(triples), (std::vector<Edge>{{0, 1, 2}, {0, 3, 4}, {0, 5, 6}}));
  EXPECT_TRUE(dependent_contains(m, example31_hypergraph()));
  EXPECT_FALSE(dependent_contains(matroid_from_matrix(identity_matrix(3)), Hypergraph(3, {{0, 1}})));

  const auto sig = arrangement_signature(x);
  EXPECT_EQ(sig.lines, 3u);
  EXPECT_EQ(sig.points_per_line, (std::vector<std::size_t>{3, 3, 3}));
  EXPECT_EQ(sig.lines_per_multipoint, std::vector<std::size_t>{3});
}

TEST(Matroid, ConcurrentSamplerRealizesExampleMatroid) {
  const auto sampler = sampler_concurrent_lines();
  for (std::uint64_t s = 0; s < 5; ++s) {
    Rng rng(s);
    const QMatrix x = sampler.sample(rng);
    std::vector<Edge> triples;
    for (const auto& c : matroid_from_matrix(x).circuits())
      if (c.size() == 3) triples.push_back(c);
    EXPECT_EQ(sorted(triples), (std::vector<Edge>{{0, 1, 2}, {0, 3, 4}, {0, 5, 6}}));
  }
}

TEST(Matroid, MinimalWithUniform) {
  const auto c = minimal_with_uniform(example31_hypergraph(), 3);
  // 3 triples plus the 4-subsets of [7] containing none of them.
  std::size_t free4 = 0;
  for (const auto& s : subsets(7, 4)) {
    const Mask m = mask_of(s);
    if ((m & 0b0000111) != 0b0000111 && (m & 0b0011001) != 0b0011001 && (m & 0b1100001) != 0b1100001) ++free4;
  }
  EXPECT_EQ(c.size(), 3 + free4);
}

TEST(GridMatroid, TheoremInstanceThreeByThree) {
  const GridSpec spec{3, 3, 3, 3, 3};
  Rng rng(5);
  const QMatrix x = realize_grid_matroid(spec, rng);
  const Matroid m = matroid_from_matrix(x);
  EXPECT_EQ(m.rank(), 3u);
  const auto expected = minimal_with_uniform(grid_hypergraph(spec), 3);
  EXPECT_EQ(sorted(m.circuits()), sorted(expected));
  EXPECT_TRUE(is_circuit_family(9, expected));

  // One grid column restricted: three points on a line, U_{2,3}.
  const Grid g = grid_matrix(3, 3);
  const Matroid col = restriction(m, g.cols[1]);
  EXPECT_EQ(col.rank(), 2u);
  EXPECT_EQ(col.circuits(), (std::vector<Edge>{{0, 1, 2}}));
  EXPECT_EQ(restriction(m, {}).rank(), 0u);
}

TEST(GridMatroid, LargerInstanceHasExpectedCircuits) {
  const GridSpec spec{3, 3, 3, 4, 3};
  Rng rng(6);
  const Matroid m = matroid_from_matrix(realize_grid_matroid(spec, rng));
  EXPECT_EQ(sorted(m.circuits()), sorted(minimal_with_uniform(grid_hypergraph(spec), 3)));
}

TEST(GridMatroid, RejectsSpecsOutsideRegime) {
  Rng rng(7);
  EXPECT_THROW(realize_grid_matroid(GridSpec{3, 3, 3, 3, 4}, rng), std::invalid_argument);
  EXPECT_THROW(realize_grid_matroid(GridSpec{2, 3, 3, 3, 3}, rng), std::invalid_argument);
}

TEST(Restriction, AgreesWithColumnSubmatrix) {
  Rng rng(8);
  const QMatrix x = testing_support::small_matrix(rng, 3, 8, -1, 1);
  const Edge s{1, 3, 4, 7};
  const Matroid r = restriction(matroid_from_matrix(x), s);
  const Matroid direct = matroid_from_matrix(x.select_columns(s));
  for (Mask m = 0; m < 16; ++m) EXPECT_EQ(r.rank(m), direct.rank(m));
}

TEST(AlgebraicMatroid, SegreTwoByTwo) {
  Rng rng(9);
  std::ifstream in(DETVAR_DATA "/segre2x2.param");
  const PolyMap phi = parse_polymap(in);
  const Matroid m = algebraic_matroid(phi, rng);
  EXPECT_EQ(m.circuits(), (std::vector<Edge>{{0, 1, 2, 3}}));
  for (const auto& s : subsets(4, 3)) EXPECT_TRUE(m.is_independent(mask_of(s)));
  EXPECT_EQ(phi.labels, (std::vector<std::string>{"11", "12", "21", "22"}));
}

TEST(AlgebraicMatroid, ThreeByThreeRankTwo) {
  Rng rng(10);
  const Matroid m = algebraic_matroid(low_rank_parametrization(3, 3, 2), rng);
  EXPECT_EQ(m.rank(), 8u);
  for (const auto& s : subsets(9, 8)) EXPECT_TRUE(m.is_independent(mask_of(s)));
  EXPECT_TRUE(m.is_dependent(full_mask(9)));
  EXPECT_EQ(m.circuits(), (std::vector<Edge>{{0, 1, 2, 3, 4, 5, 6, 7, 8}}));
}

TEST(AlgebraicMatroid, LinearMapGivesCoefficientMatroid) {
  Rng rng(11);
  const QMatrix a = testing_support::small_matrix(rng, 6, 3, -1, 1);  // 6 coordinates, 3 parameters
  PolyMap phi{Ring({"s", "t", "u"}), {}, {}};
  for (std::size_t i = 0; i < 6; ++i) {
    Polynomial f;
    for (std::size_t j = 0; j < 3; ++j) f += Polynomial(a(i, j)) * Polynomial::variable(j);
    phi.coords.push_back(f);
    phi.labels.push_back(std::to_string(i + 1));
  }
  const Matroid alg = algebraic_matroid(phi, rng);
  const Matroid lin = matroid_from_matrix(a.transposed());
  for (Mask s = 0; s < 64; ++s) EXPECT_EQ(alg.rank(s), lin.rank(s));
}

TEST(AlgebraicMatroid, IdentityMapIsFree) {
  Rng rng(12);
  PolyMap phi{Ring({"a", "b", "c"}), {"a", "b", "c"},
              {Polynomial::variable(0), Polynomial::variable(1), Polynomial::variable(2)}};
  EXPECT_TRUE(algebraic_matroid(phi, rng).circuits().empty());
}

TEST(AlgebraicMatroid, ParsesParametrizationErrors) {
  std::istringstream no_params("11 = u1\n");
  EXPECT_THROW(parse_polymap(no_params), std::invalid_argument);
  std::istringstream bad_line("params u\nfoo\n");
  EXPECT_THROW(parse_polymap(bad_line), std::invalid_argument);
}

TEST(SparseLowRank, TwoByTwoGenerators) {
  const Ideal i = sparse_lowrank_ideal(GridSpec{2, 2, 2, 2, 2});
  const auto y = [](std::size_t v) { return Polynomial::variable(v); };
  const std::set<Polynomial> want = generator_set(
      {y(0) * y(3) - y(1) * y(2), y(0) * y(2), y(1) * y(3), y(0) * y(1), y(2) * y(3)});
  EXPECT_EQ(generator_set(i.generators()), want);
  EXPECT_EQ(i.generators().size(), 5u);
}

TEST(SparseLowRank, DegenerateFamilies) {
  // d = 1: the minor block is every entry, followed by one product per row and per column.
  const Ideal entries = sparse_lowrank_ideal(GridSpec{3, 3, 3, 3, 1});
  ASSERT_EQ(entries.generators().size(), 15u);
  for (std::size_t v = 0; v < 9; ++v) EXPECT_EQ(entries.generators()[v], Polynomial::variable(v));
  // s = k: one product per column of all its entries.
  const Ideal i = sparse_lowrank_ideal(GridSpec{2, 3, 2, 3, 2});
  const auto y = [](std::size_t v) { return Polynomial::variable(v); };
  const auto gens = generator_set(i.generators());
  EXPECT_TRUE(gens.count(y(0) * y(3)));
  EXPECT_TRUE(gens.count(y(2) * y(5)));
  EXPECT_THROW(sparse_lowrank_ideal(GridSpec{3, 3, 2, 3, 3}), std::invalid_argument);
}

TEST(SparseLowRank, SubspaceParametrizationMakesGridEdgesDependent) {
  // Cell (i, j) is c_ij (u_i × w_j): every grid row and column triple has an
  // identically vanishing 3-minor, and a random point realizes the grid matroid.
  const GridSpec spec{3, 3, 3, 3, 3};
  const PolyMap phi = grid_cross_product_parametrization(spec);
  SymbolicMatrix x(3, 9);
  for (std::size_t v = 0; v < 9; ++v)
    for (std::size_t r = 0; r < 3; ++r) x(r, v) = phi.coords[v * 3 + r];
  const std::vector<std::size_t> rows{0, 1, 2};
  const Hypergraph delta = grid_hypergraph(spec);
  for (const auto& e : delta.edges()) EXPECT_TRUE(minor(x, rows, e).is_zero());
  const Edge transversal{0, 4, 8};
  EXPECT_FALSE(minor(x, rows, transversal).is_zero());

  Rng rng(13);
  const auto theta = testing_support::random_point(rng, phi.parameter_count(), 20);
  const auto vals = phi.evaluate(theta);
  QMatrix pt(3, 9);
  for (std::size_t v = 0; v < 9; ++v)
    for (std::size_t r = 0; r < 3; ++r) pt(r, v) = vals[v * 3 + r];
  EXPECT_EQ(sorted(matroid_from_matrix(pt).circuits()), sorted(minimal_with_uniform(delta, 3)));

  // Algebraic matroid of the 27 coordinates: each cell spans a 1-dimensional
  // direction times a free scale, so three coordinates of one cell are independent.
  const Matroid alg = algebraic_matroid(phi, rng);
  EXPECT_TRUE(alg.is_independent(mask_of(Edge{0, 1, 2})));
}

TEST(Arrangements, FourLineTypesHaveDistinctSignatures) {
  Rng rng(14);
  auto meet = [](const std::vector<Rational>& l1, const std::vector<Rational>& l2) { return cross(l1, l2); };
  // General position: the six pairwise intersections of four lines.
  std::vector<std::vector<Rational>> lines;
  for (int i = 0; i < 4; ++i) lines.push_back(random_vec(rng));
  std::vector<std::vector<Rational>> general;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) general.push_back(meet(lines[i], lines[j]));
  // Three lines through O, a fourth line meeting them, one extra point on each of the three.
  const auto o = random_vec(rng);
  std::vector<std::vector<Rational>> three;
  three.push_back(o);
  const auto fourth = random_vec(rng);
  for (int i = 0; i < 3; ++i) {
    const auto dir = random_vec(rng);
    const auto line = cross(o, dir);
    three.push_back(meet(line, fourth));
    three.push_back(combo(rng, o, dir));
  }
  // Four lines through O with two further points each.
  std::vector<std::vector<Rational>> four{o};
  for (int i = 0; i < 4; ++i) {
    const auto dir = random_vec(rng);
    four.push_back(combo(rng, o, dir));
    four.push_back(combo(rng, o, dir));
  }
  const auto a = arrangement_signature(columns(general));
  const auto b = arrangement_signature(columns(three));
  const auto c = arrangement_signature(columns(four));
  EXPECT_EQ(a.lines, 4u);
  EXPECT_EQ(a.lines_per_multipoint, std::vector<std::size_t>(6, 2));
  EXPECT_EQ(b.lines, 4u);
  EXPECT_EQ(b.lines_per_multipoint, (std::vector<std::size_t>{2, 2, 2, 3}));
  EXPECT_EQ(c.lines, 4u);
  EXPECT_EQ(c.lines_per_multipoint, std::vector<std::size_t>{4});
  EXPECT_FALSE(a == b);
  EXPECT_FALSE(b == c);
  EXPECT_FALSE(a == c);
}

TEST(Arrangements, GenericAndCollinearPoints) {
  Rng rng(15);
  EXPECT_EQ(arrangement_signature(random_matrix(3, 7, rng)).lines, 0u);
  QMatrix line(3, 5);
  const auto p = random_vec(rng), q = random_vec(rng);
  for (std::size_t j = 0; j < 5; ++j) {
    const auto v = combo(rng, p, q);
    for (std::size_t r = 0; r < 3; ++r) line(r, j) = v[r];
  }
  const auto sig = arrangement_signature(line);
  EXPECT_EQ(sig.lines, 1u);
  EXPECT_EQ(sig.points_per_line, std::vector<std::size_t>{5});
  EXPECT_THROW(arrangement_signature(random_matrix(2, 4, rng)), std::invalid_argument);
}

TEST(Matroid, CircuitTextFormat) {
  EXPECT_EQ(format_circuits(4, {{0, 1, 2, 3}}), "4\n1 2 3 4\n");
}
