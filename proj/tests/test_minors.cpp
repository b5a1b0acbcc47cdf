#include "support.hpp"

#include <gtest/gtest.h>

using namespace detvar;
using testing_support::leibniz_determinant;
using testing_support::random_point;

TEST(Minors, FullMinorMatchesLeibnizExpansion) {
  for (std::size_t n = 1; n <= 5; ++n) {
    const SymbolicMatrix x = generic_matrix(n, n);
    std::vector<std::size_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    EXPECT_EQ(minor(x, all, all), leibniz_determinant(x)) << n;
  }
}

TEST(Minors, EvaluatedMinorEqualsDeterminantOfEvaluatedSubmatrix) {
  Rng rng(1);
  const SymbolicMatrix x = generic_matrix(3, 6);
  for (int rep = 0; rep < 20; ++rep) {
    const auto p = random_point(rng, 18);
    QMatrix xv(3, 6);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 6; ++j) xv(i, j) = p[i * 6 + j];
    for_each_subset(6, 3, [&](std::span<const std::size_t> cols) {
      const std::vector<std::size_t> rows{0, 1, 2};
      EXPECT_EQ(minor(x, rows, cols).evaluate(p), determinant(xv.select_columns(cols)));
    });
    const std::vector<std::size_t> r2{0, 2}, c2{1, 4};
    EXPECT_EQ(minor(x, r2, c2).evaluate(p), determinant(xv.select_rows(r2).select_columns(c2)));
  }
}

TEST(Minors, ValidatesIndexSets) {
  const SymbolicMatrix x = generic_matrix(3, 4);
  const std::vector<std::size_t> r{0, 1}, c3{0, 1, 2}, bad{1, 0}, out{0, 4};
  EXPECT_THROW(minor(x, r, c3), std::invalid_argument);
  EXPECT_THROW(minor(x, r, bad), std::invalid_argument);
  EXPECT_THROW(minor(x, r, out), std::invalid_argument);
  EXPECT_THROW(minor(x, std::vector<std::size_t>{}, std::vector<std::size_t>{}), std::invalid_argument);
}

TEST(Minors, CountsAreBinomialProducts) {
  for (std::size_t k = 1; k <= 3; ++k) EXPECT_EQ(all_minors(generic_matrix(3, 5), k).size(), binomial(3, k) * binomial(5, k));
  EXPECT_TRUE(all_minors(generic_matrix(2, 2), 3).empty());
}

TEST(Minors, SubsetsAreLexicographic) {
  const auto s = subsets(4, 2);
  const std::vector<std::vector<std::size_t>> want{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  EXPECT_EQ(s, want);
  EXPECT_EQ(subsets(5, 0).size(), 1u);
  EXPECT_TRUE(subsets(2, 3).empty());
  for (std::size_t n = 0; n <= 8; ++n)
    for (std::size_t k = 0; k <= n; ++k) EXPECT_EQ(subsets(n, k).size(), binomial(n, k));
}

TEST(Minors, WideMatricesAreHandled) {
  const SymbolicMatrix x = generic_matrix(2, 70);
  const std::vector<std::size_t> rows{0, 1}, cols{3, 68};
  EXPECT_EQ(minor(x, rows, cols),
            x(0, 3) * x(1, 68) - x(0, 68) * x(1, 3));
}
