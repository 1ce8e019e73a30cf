#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "ahp/crisp.hpp"
#include "oracles.hpp"

namespace ahp {
namespace {

constexpr double kThird = 1.0 / 3.0;

ComparisonMatrix three_by_three() { return ComparisonMatrix::validate({{1, 2, 4}, {0.5, 1, 1}, {0.25, 1, 1}}); }

TEST(ValidateMatrix, AcceptsDegenerateAndReciprocal) {
  EXPECT_EQ(ComparisonMatrix::validate({{1}}).size(), 1u);
  const auto m = ComparisonMatrix::validate({{1, 3}, {kThird, 1}});
  EXPECT_DOUBLE_EQ(m(0, 1), 3.0);
}

TEST(ValidateMatrix, RejectsBrokenInvariants) {
  const auto code_of = [](const std::vector<std::vector<double>>& raw) {
    try {
      ComparisonMatrix::validate(raw);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::InvariantViolation;  // sentinel: nothing thrown
  };
  EXPECT_EQ(code_of({{1, 3}, {0.5, 1}}), ErrorCode::ReciprocityViolation);
  EXPECT_EQ(code_of({{1, 3}}), ErrorCode::NotSquare);
  EXPECT_EQ(code_of({}), ErrorCode::NotSquare);
  EXPECT_EQ(code_of({{1, -1}, {-1, 1}}), ErrorCode::NonPositiveEntry);
  EXPECT_EQ(code_of({{1, 0}, {0, 1}}), ErrorCode::NonPositiveEntry);
  EXPECT_EQ(code_of({{2, 1}, {1, 1}}), ErrorCode::DiagonalNotOne);
}

TEST(PriorityGeometricMean, UniformForAllOnes) {
  for (std::size_t n : {1u, 2u, 5u, 11u}) {
    const auto m = ComparisonMatrix::validate(std::vector<std::vector<double>>(n, std::vector<double>(n, 1.0)));
    const auto pv = priority_geometric_mean(m);
    for (double w : pv.weights) EXPECT_NEAR(w, 1.0 / n, 1e-15);
  }
}

TEST(PriorityGeometricMean, TwoByTwoClosedForm) {
  const auto pv = priority_geometric_mean(ComparisonMatrix::validate({{1, 3}, {kThird, 1}}));
  EXPECT_NEAR(pv.weights[0], 0.75, 1e-15);
  EXPECT_NEAR(pv.weights[1], 0.25, 1e-15);
  ASSERT_TRUE(pv.consistency.has_value());
  EXPECT_EQ(pv.consistency->gci, 0.0);
}

TEST(PriorityGeometricMean, RecoversConsistentWeights) {
  const std::vector<double> w = {0.6, 0.3, 0.1};
  const auto pv = priority_geometric_mean(ComparisonMatrix::validate(oracle::ratio_matrix(w)));
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(pv.weights[i], w[i], 1e-10);
  EXPECT_LT(pv.consistency->gci, 1e-12);
}

TEST(PriorityGeometricMean, NoOverflowForLargeExtremeMatrices) {
  // 50x50 with the first alternative dominating everything at 9.
  std::vector<std::vector<double>> raw(50, std::vector<double>(50, 1.0));
  for (std::size_t j = 1; j < 50; ++j) {
    raw[0][j] = 9.0;
    raw[j][0] = 1.0 / 9.0;
  }
  const auto pv = priority_geometric_mean(ComparisonMatrix::validate(raw));
  for (double w : pv.weights) EXPECT_TRUE(std::isfinite(w));
  EXPECT_GT(pv.weights[0], pv.weights[1]);
}

TEST(LocalInconsistency, OnesForConsistentMatrix) {
  const std::vector<double> w = {0.5, 0.3, 0.2};
  const auto m = ComparisonMatrix::validate(oracle::ratio_matrix(w));
  const auto e = local_inconsistency(m, w);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(e(i, j), 1.0, 1e-15);
}

TEST(LocalInconsistency, TwoByTwoIsAlwaysOne) {
  const std::vector<double> w = {2.0 / 3.0, 1.0 / 3.0};
  const auto e = local_inconsistency(ComparisonMatrix::validate({{1, 2}, {0.5, 1}}), w);
  EXPECT_NEAR(e(0, 1), 1.0, 1e-15);
}

TEST(LocalInconsistency, ThreeByThreeMatchesOracle) {
  const auto m = three_by_three();
  const auto pv = priority_geometric_mean(m);
  const auto e = local_inconsistency(m, pv.weights);
  // 30-digit reference: e_12 = 2^(-1/3), e_13 = 2^(1/3), e_23 = 2^(-1/3).
  EXPECT_NEAR(e(0, 1), 0.79370052598409973738, 1e-14);
  EXPECT_NEAR(e(0, 2), 1.2599210498948731648, 1e-14);
  EXPECT_NEAR(e(1, 2), 0.79370052598409973738, 1e-14);
  EXPECT_NEAR(e(1, 0), 1.2599210498948731648, 1e-14);
}

TEST(LocalInconsistency, RejectsZeroWeight) {
  try {
    local_inconsistency(three_by_three(), std::vector<double>{1.0, 0.0, 0.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroWeight);
  }
}

TEST(Gci, ZeroForConsistentAndSmallMatrices) {
  const std::vector<double> w = {0.4, 0.3, 0.2, 0.1};
  const auto m = ComparisonMatrix::validate(oracle::ratio_matrix(w));
  EXPECT_LT(gci(m, w), 1e-12);
  const auto two = ComparisonMatrix::validate({{1, 7}, {1.0 / 7, 1}});
  EXPECT_EQ(gci(two, priority_geometric_mean(two).weights), 0.0);
}

TEST(Gci, ThreeByThreeFrozenValue) {
  const auto m = three_by_three();
  // Evaluated to 30 digits with mpmath before the kernel was written.
  EXPECT_NEAR(gci(m, priority_geometric_mean(m).weights), 0.16015100463940047489, 1e-14);
}

TEST(CheckConsistency, Thresholds) {
  EXPECT_TRUE(check_consistency(0.1189, 11).consistent);
  EXPECT_DOUBLE_EQ(check_consistency(0.1189, 11).threshold, 0.37);
  EXPECT_FALSE(check_consistency(0.38, 11).consistent);
  EXPECT_TRUE(check_consistency(0.0, 2).consistent);
  EXPECT_TRUE(std::isinf(check_consistency(5.0, 2).threshold));
  EXPECT_DOUBLE_EQ(check_consistency(0.0, 3).threshold, 0.31);
  EXPECT_DOUBLE_EQ(check_consistency(0.0, 4).threshold, 0.35);
  EXPECT_DOUBLE_EQ(check_consistency(0.0, 5).threshold, 0.37);
  EXPECT_FALSE(check_consistency(0.32, 3).consistent);
  EXPECT_TRUE(check_consistency(0.31, 3).consistent);
}

TEST(ScoreAlternatives, PassThroughAndSymmetry) {
  const PriorityVector one({1.0});
  const std::vector<PriorityVector> local1 = {PriorityVector({0.5, 0.3, 0.2})};
  const auto s1 = score_alternatives(one, local1);
  EXPECT_DOUBLE_EQ(s1[0], 0.5);
  EXPECT_DOUBLE_EQ(s1[1], 0.3);
  EXPECT_DOUBLE_EQ(s1[2], 0.2);

  const PriorityVector half({0.5, 0.5});
  const std::vector<PriorityVector> local2 = {PriorityVector({1.0, 0.0}), PriorityVector({0.0, 1.0})};
  const auto s2 = score_alternatives(half, local2);
  EXPECT_DOUBLE_EQ(s2[0], 0.5);
  EXPECT_DOUBLE_EQ(s2[1], 0.5);
}

TEST(ScoreAlternatives, Errors) {
  const PriorityVector half({0.5, 0.5});
  const std::vector<PriorityVector> one_local = {PriorityVector({1.0, 0.0})};
  try {
    score_alternatives(half, one_local);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
  }
  const std::vector<PriorityVector> ragged = {PriorityVector({1.0, 0.0}), PriorityVector({0.2, 0.3, 0.5})};
  try {
    score_alternatives(half, ragged);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::AlternativeSetMismatch);
  }
}

TEST(PriorityVector, RejectsUnnormalized) {
  EXPECT_THROW(PriorityVector({0.5, 0.6}), Error);
  EXPECT_THROW(PriorityVector({1.5, -0.5}), Error);
}

// Properties over random matrices.

TEST(CrispProperties, PermutationEquivariance) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 3 + trial % 6;
    const auto raw = oracle::random_nine_point_matrix(n, rng);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::vector<double>> permuted(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) permuted[i][j] = raw[perm[i]][perm[j]];
    const auto m = ComparisonMatrix::validate(raw);
    const auto p = ComparisonMatrix::validate(permuted);
    const auto w = priority_geometric_mean(m);
    const auto wp = priority_geometric_mean(p);
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(wp.weights[i], w.weights[perm[i]], 1e-12);
    EXPECT_NEAR(wp.consistency->gci, w.consistency->gci, 1e-12);
  }
}

TEST(CrispProperties, ReciprocalTransposeInvertsPriorities) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 3 + trial % 6;
    const auto raw = oracle::random_nine_point_matrix(n, rng);
    std::vector<std::vector<double>> rt(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) rt[i][j] = 1.0 / raw[j][i];
    const auto w = priority_geometric_mean(ComparisonMatrix::validate(raw)).weights;
    const auto wrt = priority_geometric_mean(ComparisonMatrix::validate(rt)).weights;
    // Entrywise reciprocal of the transpose equals the original matrix for
    // reciprocal matrices, so the priorities must coincide.
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(wrt[i], w[i], 1e-12);

    // Transpose alone (a_ji) inverts priorities: w' ∝ 1 / w.
    std::vector<std::vector<double>> tr(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) tr[i][j] = raw[j][i];
    const auto wt = priority_geometric_mean(ComparisonMatrix::validate(tr)).weights;
    double inv_total = 0.0;
    for (double x : w) inv_total += 1.0 / x;
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(wt[i], (1.0 / w[i]) / inv_total, 1e-12);
  }
}

TEST(CrispProperties, ScoresAreLinearInLocalWeights) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + trial % 5;
    const std::size_t k = 3;
    const auto criteria = oracle::random_weights(n, rng);
    std::vector<std::vector<double>> local;
    for (std::size_t c = 0; c < n; ++c) local.push_back(oracle::random_weights(k, rng));
    const auto base = weighted_scores(criteria, local);
    // Shift mass within sub-criterion 0 from alternative 1 to alternative 0.
    const double delta = local[0][1] * 0.5;
    auto bumped = local;
    bumped[0][0] += delta;
    bumped[0][1] -= delta;
    const auto after = weighted_scores(criteria, bumped);
    EXPECT_NEAR(after[0] - base[0], criteria[0] * delta, 1e-14);
    EXPECT_NEAR(after[1] - base[1], -criteria[0] * delta, 1e-14);
    EXPECT_NEAR(after[2], base[2], 1e-15);
  }
}

TEST(CrispProperties, GciMatchesOracleOnThreeByThree) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const auto raw = oracle::random_nine_point_matrix(3, rng);
    const auto m = ComparisonMatrix::validate(raw);
    EXPECT_NEAR(gci(m, priority_geometric_mean(m).weights), oracle::gci(raw), 1e-12);
  }
}

}  // namespace
}  // namespace ahp
