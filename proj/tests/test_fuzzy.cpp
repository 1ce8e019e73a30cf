#include <gtest/gtest.h>

#include <random>

#include "ahp/elicitation.hpp"
#include "ahp/fuzzy.hpp"
#include "oracles.hpp"

namespace ahp {
namespace {

void expect_tfn_near(const Tfn& t, double l, double m, double u, double tol = 1e-15) {
  EXPECT_NEAR(t.l(), l, tol);
  EXPECT_NEAR(t.m(), m, tol);
  EXPECT_NEAR(t.u(), u, tol);
}

TEST(Tfn, ConstructionEnforcesInvariant) {
  EXPECT_NO_THROW(Tfn(1, 2, 3));
  EXPECT_NO_THROW(Tfn(2, 2, 2));
  try {
    Tfn(0, 1, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonPositiveComponent);
  }
  try {
    Tfn(3, 2, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvariantViolation);
  }
}

TEST(TfnArithmetic, Examples) {
  expect_tfn_near(tfn_mul(Tfn(1, 2, 3), Tfn(2, 3, 4)), 2, 6, 12);
  expect_tfn_near(tfn_add(Tfn(1, 2, 3), Tfn(2, 3, 4)), 3, 5, 7);
  const Tfn r = tfn_reciprocal(Tfn(2, 3, 4));
  EXPECT_EQ(r.l(), 1.0 / 4);
  EXPECT_EQ(r.m(), 1.0 / 3);
  EXPECT_EQ(r.u(), 1.0 / 2);
  for (std::size_t k : {1u, 2u, 7u, 11u}) expect_tfn_near(tfn_nth_root(Tfn(), k), 1, 1, 1);
  expect_tfn_near(tfn_nth_root(Tfn(4, 9, 16), 2), 2, 3, 4);
}

TEST(Defuzzify, Centroid) {
  EXPECT_DOUBLE_EQ(defuzzify(Tfn(1, 2, 3)), 2.0);
  EXPECT_DOUBLE_EQ(defuzzify(Tfn(0.7, 0.7, 0.7)), 0.7);
  EXPECT_DOUBLE_EQ(defuzzify(Tfn(2, 3, 7)), 4.0);
}

TEST(Normalize, ExamplesAndAllZero) {
  const std::vector<double> a = {2, 2}, b = {1, 0, 0}, c = {4, 2, 2};
  EXPECT_EQ(normalize(a), (std::vector<double>{0.5, 0.5}));
  EXPECT_EQ(normalize(b), (std::vector<double>{1, 0, 0}));
  EXPECT_EQ(normalize(c), (std::vector<double>{0.5, 0.25, 0.25}));
  const std::vector<double> zeros = {0, 0};
  try {
    normalize(zeros);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::AllZero);
  }
}

TEST(FuzzyWeights, UniformMatrix) {
  const auto m = FuzzyComparisonMatrix::from_upper(3, [](std::size_t, std::size_t) { return Tfn(); });
  const auto fw = fuzzy_weights(m);
  for (const auto& w : fw.fuzzy) expect_tfn_near(w, 1.0 / 3, 1.0 / 3, 1.0 / 3);
  for (double w : fw.normalized) EXPECT_NEAR(w, 1.0 / 3, 1e-15);
}

TEST(FuzzyWeights, TwoByTwoMatchesHandChain) {
  const auto m = FuzzyComparisonMatrix::from_upper(2, [](std::size_t, std::size_t) { return Tfn(2, 3, 4); });
  const auto fw = fuzzy_weights(m);
  // r1 = (sqrt2, sqrt3, 2), r2 = (1/2, 1/sqrt3, 1/sqrt2); values from a
  // 30-digit evaluation of the same chain.
  expect_tfn_near(fw.fuzzy[0], 0.52240774992748288503, 0.75, 1.0448154998549657701, 1e-14);
  expect_tfn_near(fw.fuzzy[1], 0.18469903125906463937, 0.25, 0.36939806251812927874, 1e-14);
  EXPECT_NEAR(fw.normalized[0], 0.74238559158584193814, 1e-14);
  EXPECT_NEAR(fw.normalized[1], 0.25761440841415806186, 1e-14);
}

TEST(FuzzyWeights, MatchesComponentwiseOracle) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + trial % 7;
    const auto crisp = ComparisonMatrix::validate(oracle::random_nine_point_matrix(n, rng));
    const auto fuzzy = fuzzify_matrix(crisp);
    oracle::FuzzyGrid grid(n, std::vector<oracle::Triple>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) grid[i][j] = {fuzzy(i, j).l(), fuzzy(i, j).m(), fuzzy(i, j).u()};
    const auto expected = oracle::fuzzy_weights(grid);
    const auto fw = fuzzy_weights(fuzzy);
    for (std::size_t i = 0; i < n; ++i) expect_tfn_near(fw.fuzzy[i], expected[i][0], expected[i][1], expected[i][2], 1e-12);
  }
}

TEST(FuzzyProperties, DegenerateCollapseMatchesCrisp) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + trial % 9;
    const auto crisp = ComparisonMatrix::validate(oracle::random_nine_point_matrix(n, rng));
    const auto fw = fuzzy_weights(FuzzyComparisonMatrix::degenerate(crisp));
    const auto pv = priority_geometric_mean(crisp);
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_NEAR(fw.normalized[i], pv.weights[i], 1e-10);
      expect_tfn_near(fw.fuzzy[i], pv.weights[i], pv.weights[i], pv.weights[i], 1e-10);
    }
  }
}

TEST(FuzzyProperties, MiddleComponentIsCrispForConsistentSeed) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 3 + trial % 5;
    const auto w = oracle::random_weights(n, rng);
    const auto crisp = ComparisonMatrix::validate(oracle::ratio_matrix(w));
    // Spread every entry around its crisp value; m stays exact.
    const auto fuzzy = FuzzyComparisonMatrix::from_upper(
        n, [&](std::size_t i, std::size_t j) { return Tfn(crisp(i, j) * 0.8, crisp(i, j), crisp(i, j) * 1.25); });
    const auto fw = fuzzy_weights(fuzzy);
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(fw.fuzzy[i].m(), w[i], 1e-12);
  }
}

TEST(FuzzyProperties, WideningSupportNeverShrinksWeightSupport) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> widen(1.0, 1.5);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 3 + trial % 5;
    const auto crisp = ComparisonMatrix::validate(oracle::random_nine_point_matrix(n, rng));
    const auto narrow = fuzzify_matrix(crisp);
    const std::size_t wi = trial % (n - 1);
    const std::size_t wj = wi + 1;
    const double f = widen(rng);
    const auto wide = FuzzyComparisonMatrix::from_upper(n, [&](std::size_t i, std::size_t j) {
      const Tfn& t = narrow(i, j);
      if (i == wi && j == wj) return Tfn(t.l() / f, t.m(), t.u() * f);
      return t;
    });
    const auto a = fuzzy_weights(narrow);
    const auto b = fuzzy_weights(wide);
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_LE(b.fuzzy[i].l(), a.fuzzy[i].l() + 1e-15);
      EXPECT_GE(b.fuzzy[i].u(), a.fuzzy[i].u() - 1e-15);
    }
  }
}

TEST(FuzzyComparisonMatrix, ValidateRejectsBadDiagonalAndReciprocity) {
  SquareMatrix<Tfn> grid(2, Tfn());
  grid(0, 1) = Tfn(1, 2, 3);
  grid(1, 0) = Tfn(1, 2, 3);
  try {
    FuzzyComparisonMatrix::validate(grid);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ReciprocityViolation);
  }
  grid(1, 0) = tfn_reciprocal(grid(0, 1));
  grid(0, 0) = Tfn(1, 1, 2);
  try {
    FuzzyComparisonMatrix::validate(grid);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DiagonalNotOne);
  }
}

TEST(FuzzyScore, PassThroughAndCollapse) {
  const std::vector<double> one = {1.0};
  const std::vector<std::vector<double>> local = {{0.2, 0.5, 0.3}};
  const auto s = fuzzy_score_alternatives(one, local);
  EXPECT_EQ(s, local[0]);
}

}  // namespace
}  // namespace ahp
