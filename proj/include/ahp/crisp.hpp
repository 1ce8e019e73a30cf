#pragma once

// Crisp AHP kernel: reciprocal comparison matrices, geometric-mean priority
// vectors, the geometric consistency index and weighted scoring.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ahp/error.hpp"
#include "ahp/square_matrix.hpp"

namespace ahp {

inline constexpr double kReciprocityTolerance = 1e-9;
inline constexpr double kSumTolerance = 1e-9;

/// Positive reciprocal judgment matrix: a_ij > 0, a_ii = 1, a_ji = 1 / a_ij.
/// Only constructible through `validate`, so holding one means the
/// invariants were checked.
class ComparisonMatrix {
 public:
  static ComparisonMatrix validate(const std::vector<std::vector<double>>& raw) {
    const std::size_t n = raw.size();
    require(n >= 1, ErrorCode::NotSquare, "matrix has no rows");
    SquareMatrix<double> grid(n, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
      require(raw[i].size() == n, ErrorCode::NotSquare,
              "row " + std::to_string(i) + " has " + std::to_string(raw[i].size()) + " entries, expected " +
                  std::to_string(n));
      for (std::size_t j = 0; j < n; ++j) grid(i, j) = raw[i][j];
    }
    return validate(std::move(grid));
  }

  static ComparisonMatrix validate(SquareMatrix<double> grid) {
    const std::size_t n = grid.size();
    require(n >= 1, ErrorCode::NotSquare, "matrix has no rows");
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const double a = grid(i, j);
        require(std::isfinite(a) && a > 0.0, ErrorCode::NonPositiveEntry,
                "a(" + std::to_string(i) + "," + std::to_string(j) + ") = " + std::to_string(a));
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      require(grid(i, i) == 1.0, ErrorCode::DiagonalNotOne, "a(" + std::to_string(i) + "," + std::to_string(i) + ")");
      for (std::size_t j = i + 1; j < n; ++j) {
        require(std::abs(grid(i, j) * grid(j, i) - 1.0) <= kReciprocityTolerance, ErrorCode::ReciprocityViolation,
                "a(" + std::to_string(i) + "," + std::to_string(j) + ") * a(" + std::to_string(j) + "," +
                    std::to_string(i) + ") != 1");
      }
    }
    return ComparisonMatrix(std::move(grid));
  }

  std::size_t size() const noexcept { return grid_.size(); }
  double operator()(std::size_t i, std::size_t j) const { return grid_(i, j); }
  const SquareMatrix<double>& grid() const noexcept { return grid_; }

  std::vector<std::vector<double>> to_rows() const {
    std::vector<std::vector<double>> rows(size());
    for (std::size_t i = 0; i < size(); ++i) rows[i].assign(grid_.row(i).begin(), grid_.row(i).end());
    return rows;
  }

  bool operator==(const ComparisonMatrix&) const = default;

 private:
  explicit ComparisonMatrix(SquareMatrix<double> grid) : grid_(std::move(grid)) {}
  SquareMatrix<double> grid_;
};

/// GCI together with the size-dependent bound it was judged against.
struct ConsistencyVerdict {
  double gci = 0.0;
  std::size_t n = 0;
  double threshold = std::numeric_limits<double>::infinity();
  bool consistent = true;

  bool operator==(const ConsistencyVerdict&) const = default;
};

/// Throws InvariantViolation unless `weights` is a non-negative vector
/// summing to 1 within kSumTolerance.
inline void check_normalized(std::span<const double> weights, const std::string& what) {
  double sum = 0.0;
  for (double w : weights) {
    require(std::isfinite(w) && w >= 0.0, ErrorCode::InvariantViolation, what + ": negative or non-finite weight");
    sum += w;
  }
  require(std::abs(sum - 1.0) <= kSumTolerance, ErrorCode::InvariantViolation,
          what + ": weights sum to " + std::to_string(sum));
}

struct PriorityVector {
  std::vector<double> weights;
  std::optional<ConsistencyVerdict> consistency;  // absent when no source matrix applies

  PriorityVector() = default;
  explicit PriorityVector(std::vector<double> w, std::optional<ConsistencyVerdict> verdict = std::nullopt)
      : weights(std::move(w)), consistency(verdict) {
    check_normalized(weights, "priority vector");
  }

  std::size_t size() const noexcept { return weights.size(); }
  bool consistent() const noexcept { return !consistency || consistency->consistent; }

  bool operator==(const PriorityVector&) const = default;
};

/// e_ij = a_ij * w_j / w_i.
inline SquareMatrix<double> local_inconsistency(const ComparisonMatrix& m, std::span<const double> w) {
  const std::size_t n = m.size();
  require(w.size() == n, ErrorCode::DimensionMismatch,
          "weights have " + std::to_string(w.size()) + " entries for a " + std::to_string(n) + "x" +
              std::to_string(n) + " matrix");
  for (std::size_t i = 0; i < n; ++i) require(w[i] > 0.0, ErrorCode::ZeroWeight, "w(" + std::to_string(i) + ") = 0");
  SquareMatrix<double> e(n, 1.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) e(i, j) = m(i, j) * w[j] / w[i];
  return e;
}

/// Geometric consistency index. Defined as 0 for n <= 2, where every
/// reciprocal matrix is consistent and the normalizing factor vanishes.
inline double gci(const ComparisonMatrix& m, std::span<const double> w) {
  const std::size_t n = m.size();
  if (n <= 2) {
    require(w.size() == n, ErrorCode::DimensionMismatch, "weights do not match matrix size");
    return 0.0;
  }
  const SquareMatrix<double> e = local_inconsistency(m, w);
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double l = std::log(e(i, j));
      sum += l * l;
    }
  }
  return 2.0 * sum / (static_cast<double>(n - 1) * static_cast<double>(n - 2));
}

/// Size-dependent GCI bound: 0.31 (n=3), 0.35 (n=4), 0.37 (n>4); none for n<=2.
inline double gci_threshold(std::size_t n) {
  if (n <= 2) return std::numeric_limits<double>::infinity();
  if (n == 3) return 0.31;
  if (n == 4) return 0.35;
  return 0.37;
}

inline ConsistencyVerdict check_consistency(double gci_value, std::size_t n) {
  const double threshold = gci_threshold(n);
  return ConsistencyVerdict{gci_value, n, threshold, gci_value <= threshold};
}

/// Normalized row geometric means. Evaluated as exp(mean_j ln a_ij) shifted
/// by the largest log-mean so large n cannot overflow.
inline std::vector<double> geometric_mean_weights(const SquareMatrix<double>& a) {
  const std::size_t n = a.size();
  std::vector<double> log_means(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (double x : a.row(i)) s += std::log(x);
    log_means[i] = s / static_cast<double>(n);
  }
  const double shift = *std::max_element(log_means.begin(), log_means.end());
  std::vector<double> w(n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = std::exp(log_means[i] - shift);
    total += w[i];
  }
  for (double& x : w) x /= total;
  return w;
}

inline PriorityVector priority_geometric_mean(const ComparisonMatrix& m) {
  std::vector<double> w = geometric_mean_weights(m.grid());
  const ConsistencyVerdict verdict = check_consistency(gci(m, w), m.size());
  return PriorityVector(std::move(w), verdict);
}

/// S_a = sum_k w_k * w_a^(k). `local[k]` holds the alternative weights under
/// sub-criterion k; all must cover the same alternatives in the same order.
inline std::vector<double> weighted_scores(std::span<const double> criteria_weights,
                                           std::span<const std::vector<double>> local) {
  require(criteria_weights.size() == local.size(), ErrorCode::DimensionMismatch,
          std::to_string(criteria_weights.size()) + " criteria weights but " + std::to_string(local.size()) +
              " local weight vectors");
  require(!local.empty(), ErrorCode::DimensionMismatch, "no sub-criteria to score");
  const std::size_t alternatives = local.front().size();
  std::vector<double> scores(alternatives, 0.0);
  for (std::size_t k = 0; k < local.size(); ++k) {
    require(local[k].size() == alternatives, ErrorCode::AlternativeSetMismatch,
            "local vector " + std::to_string(k) + " covers " + std::to_string(local[k].size()) +
                " alternatives, expected " + std::to_string(alternatives));
    for (std::size_t a = 0; a < alternatives; ++a) scores[a] += criteria_weights[k] * local[k][a];
  }
  check_normalized(scores, "scores");
  return scores;
}

inline std::vector<double> score_alternatives(const PriorityVector& criteria_weights,
                                              std::span<const PriorityVector> alternative_weights) {
  std::vector<std::vector<double>> local;
  local.reserve(alternative_weights.size());
  for (const auto& pv : alternative_weights) local.push_back(pv.weights);
  return weighted_scores(criteria_weights.weights, local);
}

}  // namespace ahp
