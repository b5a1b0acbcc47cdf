#include "support.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

using namespace detvar;

TEST(Grid, LabelsAreColumnMajor) {
  const Grid g = grid_matrix(4, 7);
  EXPECT_EQ(format_grid(g),
            "1 5 9 13 17 21 25\n"
            "2 6 10 14 18 22 26\n"
            "3 7 11 15 19 23 27\n"
            "4 8 12 16 20 24 28\n");
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 7; ++j) EXPECT_EQ(g.labels(i, j), g.vertex(i, j) + 1);
  EXPECT_EQ(g.rows[1], (Edge{1, 5, 9, 13, 17, 21, 25}));
  EXPECT_EQ(g.cols[2], (Edge{8, 9, 10, 11}));
}

TEST(Hypergraph, KeepsOnlyMinimalEdges) {
  const Hypergraph h(5, {{2, 1}, {1, 2, 3}, {0, 4}, {4, 0}, {0, 1, 4}});
  EXPECT_EQ(h.edges(), (std::vector<Edge>{{0, 4}, {1, 2}}));
  EXPECT_THROW(Hypergraph(3, {{0, 3}}), std::invalid_argument);
  EXPECT_THROW(Hypergraph(3, {{}}), std::invalid_argument);
}

TEST(Hypergraph, TextRoundTrip) {
  const Hypergraph h = example32_hypergraph();
  std::istringstream in(format_hypergraph(h));
  EXPECT_EQ(parse_hypergraph(in), h);
  std::ifstream f(DETVAR_DATA "/example32.hg");
  EXPECT_EQ(parse_hypergraph(f), h);
  std::istringstream bad("3\n0 1\n");
  EXPECT_THROW(parse_hypergraph(bad), std::invalid_argument);
}

TEST(GridHypergraph, EdgeCountIsRowAndColumnSubsets) {
  for (const GridSpec spec : {GridSpec{3, 3, 3, 4, 3}, GridSpec{2, 3, 4, 7, 3}, GridSpec{3, 4, 4, 5, 4}}) {
    const auto h = grid_hypergraph(spec);
    EXPECT_EQ(h.edges().size(), spec.k * binomial(spec.l, spec.t) + spec.l * binomial(spec.k, spec.s));
  }
  EXPECT_THROW(grid_hypergraph(GridSpec{4, 3, 3, 4, 3}), std::invalid_argument);
}

TEST(GridHypergraph, RegimePredicate) {
  EXPECT_TRUE((GridSpec{3, 3, 3, 3, 3}.unique_minimal_regime()));
  EXPECT_FALSE((GridSpec{3, 3, 3, 3, 4}.unique_minimal_regime()));
  EXPECT_FALSE((GridSpec{2, 3, 3, 3, 3}.unique_minimal_regime()));
  EXPECT_TRUE((GridSpec{3, 4, 4, 5, 4}.unique_minimal_regime()));
}

TEST(Example32, FixtureIsTheGridHypergraphOnThreeByFour) {
  EXPECT_EQ(example32_hypergraph(), grid_hypergraph(GridSpec{3, 3, 3, 4, 3}));
}

TEST(HypergraphIdeal, GeneratorsAreEdgeMinors) {
  const Ideal i = hypergraph_ideal(example31_hypergraph(), 3);
  EXPECT_EQ(i.generators().size(), 3u);
  EXPECT_EQ(i.ring().size(), 21u);
  // Edges of size 2 in d = 3 give three 2-minors each.
  EXPECT_EQ(hypergraph_ideal(Hypergraph(4, {{0, 1}}), 3).generators().size(), 3u);
  // Edges larger than d contribute nothing.
  EXPECT_TRUE(hypergraph_ideal(Hypergraph(5, {{0, 1, 2, 3}}), 3).generators().empty());
  EXPECT_TRUE(hypergraph_ideal(Hypergraph(4, {}), 3).generators().empty());
}

TEST(HypergraphIdeal, VarietyMembershipMatchesGeneratorVanishing) {
  // Points with planted dependencies exercise both outcomes.
  Rng rng(1);
  const Hypergraph h = example31_hypergraph();
  const auto gens = hypergraph_ideal(h, 3).generators();
  for (int rep = 0; rep < 40; ++rep) {
    QMatrix x = testing_support::small_matrix(rng, 3, 7, -2, 2);
    if (rep % 2 == 0)
      for (std::size_t r = 0; r < 3; ++r) x(r, 2) = x(r, 0) + x(r, 1);
    std::vector<Rational> p(x.data().begin(), x.data().end());
    const bool vanish = std::all_of(gens.begin(), gens.end(), [&](const Polynomial& g) { return is_zero(g.evaluate(p)); });
    EXPECT_EQ(in_variety(h, x), vanish) << format_matrix(x);
  }
}

TEST(Correspondence, GridAndCIIdealsCoincide) {
  const GridSpec spec{3, 3, 3, 4, 3};
  const auto corr = grid_ci_correspondence(spec);
  const Ideal ci = ci_ideal(corr.problem.statements, corr.problem.model);
  const Ideal grid = hypergraph_ideal(grid_hypergraph(spec), spec.d);
  std::vector<Polynomial> renamed;
  for (const auto& g : ci.generators()) renamed.push_back(g.renamed(corr.coordinate_map));
  EXPECT_EQ(ci.generators().size(), 16u);
  EXPECT_EQ(generator_set(renamed), generator_set(grid.generators()));

  // Four column minors from the first statement, twelve row-triple minors from the second.
  const auto first = ci_minor_generators(corr.problem.statements[0], corr.problem.model);
  const auto second = ci_minor_generators(corr.problem.statements[1], corr.problem.model);
  EXPECT_EQ(dedup_up_to_sign(first).size(), 4u);
  EXPECT_EQ(dedup_up_to_sign(second).size(), 12u);
}

TEST(Correspondence, HoldsAcrossSmallSpecs) {
  for (const GridSpec spec : {GridSpec{2, 2, 2, 3, 2}, GridSpec{2, 3, 3, 3, 3}, GridSpec{3, 2, 3, 2, 3}}) {
    const auto corr = grid_ci_correspondence(spec);
    const Ideal ci = ci_ideal(corr.problem.statements, corr.problem.model);
    std::vector<Polynomial> renamed;
    for (const auto& g : ci.generators()) renamed.push_back(g.renamed(corr.coordinate_map));
    EXPECT_EQ(generator_set(renamed), generator_set(hypergraph_ideal(grid_hypergraph(spec), spec.d).generators()))
        << spec.s << spec.t << spec.k << spec.l << spec.d;
  }
  EXPECT_THROW(grid_ci_correspondence(GridSpec{1, 3, 3, 3, 3}), std::invalid_argument);
}

TEST(Correspondence, CoordinateMapIsABijection) {
  const std::array<std::size_t, 3> shape{3, 2, 4};
  auto map = tensor_to_matrix_map(shape);
  // p_{x,y1,y2} at flat x*8 + y1*4 + y2 goes to x*8 + y2*2 + y1.
  EXPECT_EQ(map[0 * 8 + 1 * 4 + 3], 0u * 8 + 3 * 2 + 1);
  std::sort(map.begin(), map.end());
  for (std::size_t i = 0; i < map.size(); ++i) EXPECT_EQ(map[i], i);
}
