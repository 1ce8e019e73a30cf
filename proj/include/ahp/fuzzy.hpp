#pragma once

// Triangular fuzzy AHP: TFN arithmetic, fuzzy geometric-mean weights,
// centroid defuzzification and normalization.

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "ahp/crisp.hpp"
#include "ahp/error.hpp"
#include "ahp/square_matrix.hpp"

namespace ahp {

/// Triangular fuzzy number (l, m, u) with 0 < l <= m <= u, checked on
/// construction. Every TFN in the pipeline goes through this constructor.
class Tfn {
 public:
  Tfn() : l_(1.0), m_(1.0), u_(1.0) {}
  Tfn(double l, double m, double u) : l_(l), m_(m), u_(u) {
    require(std::isfinite(l) && std::isfinite(m) && std::isfinite(u) && l > 0.0 && m > 0.0 && u > 0.0,
            ErrorCode::NonPositiveComponent, "(" + std::to_string(l) + ", " + std::to_string(m) + ", " +
                                                 std::to_string(u) + ")");
    require(l <= m && m <= u, ErrorCode::InvariantViolation,
            "TFN ordering l <= m <= u broken: (" + std::to_string(l) + ", " + std::to_string(m) + ", " +
                std::to_string(u) + ")");
  }

  static Tfn crisp(double x) { return Tfn(x, x, x); }

  double l() const noexcept { return l_; }
  double m() const noexcept { return m_; }
  double u() const noexcept { return u_; }

  bool operator==(const Tfn&) const = default;

 private:
  double l_, m_, u_;
};

inline Tfn tfn_add(const Tfn& a, const Tfn& b) { return {a.l() + b.l(), a.m() + b.m(), a.u() + b.u()}; }

/// Componentwise product; the usual triangular approximation of the
/// extension-principle result.
inline Tfn tfn_mul(const Tfn& a, const Tfn& b) { return {a.l() * b.l(), a.m() * b.m(), a.u() * b.u()}; }

/// (1/u, 1/m, 1/l). The only place the lower/upper swap happens.
inline Tfn tfn_reciprocal(const Tfn& a) { return {1.0 / a.u(), 1.0 / a.m(), 1.0 / a.l()}; }

inline Tfn tfn_nth_root(const Tfn& a, std::size_t n) {
  require(n >= 1, ErrorCode::DimensionMismatch, "root order must be >= 1");
  const double p = 1.0 / static_cast<double>(n);
  return {std::pow(a.l(), p), std::pow(a.m(), p), std::pow(a.u(), p)};
}

/// Centroid (l + m + u) / 3.
inline double defuzzify(const Tfn& a) { return (a.l() + a.m() + a.u()) / 3.0; }

inline std::vector<double> normalize(std::span<const double> values) {
  double total = 0.0;
  for (double v : values) {
    require(std::isfinite(v) && v >= 0.0, ErrorCode::InvariantViolation, "normalize expects non-negative values");
    total += v;
  }
  require(total > 0.0, ErrorCode::AllZero, "cannot normalize an all-zero vector");
  std::vector<double> out(values.begin(), values.end());
  for (double& v : out) v /= total;
  return out;
}

/// Fuzzy positive reciprocal matrix: diagonal (1,1,1) and
/// a_ji = (1/u_ij, 1/m_ij, 1/l_ij).
class FuzzyComparisonMatrix {
 public:
  static FuzzyComparisonMatrix validate(SquareMatrix<Tfn> grid) {
    const std::size_t n = grid.size();
    require(n >= 1, ErrorCode::NotSquare, "fuzzy matrix has no rows");
    for (std::size_t i = 0; i < n; ++i) {
      require(grid(i, i) == Tfn(), ErrorCode::DiagonalNotOne,
              "fuzzy a(" + std::to_string(i) + "," + std::to_string(i) + ") != (1,1,1)");
      for (std::size_t j = i + 1; j < n; ++j) {
        const Tfn& a = grid(i, j);
        const Tfn& b = grid(j, i);
        const bool reciprocal = std::abs(a.l() * b.u() - 1.0) <= kReciprocityTolerance &&
                                std::abs(a.m() * b.m() - 1.0) <= kReciprocityTolerance &&
                                std::abs(a.u() * b.l() - 1.0) <= kReciprocityTolerance;
        require(reciprocal, ErrorCode::ReciprocityViolation,
                "fuzzy a(" + std::to_string(j) + "," + std::to_string(i) + ") is not the reciprocal of a(" +
                    std::to_string(i) + "," + std::to_string(j) + ")");
      }
    }
    return FuzzyComparisonMatrix(std::move(grid));
  }

  /// Fills the lower triangle from the upper one via tfn_reciprocal, so
  /// reciprocity holds bit-for-bit.
  static FuzzyComparisonMatrix from_upper(std::size_t n, const auto& upper_entry) {
    SquareMatrix<Tfn> grid(n, Tfn());
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        grid(i, j) = upper_entry(i, j);
        grid(j, i) = tfn_reciprocal(grid(i, j));
      }
    }
    return validate(std::move(grid));
  }

  /// (x, x, x) entries for every crisp a_ij.
  static FuzzyComparisonMatrix degenerate(const ComparisonMatrix& m) {
    SquareMatrix<Tfn> grid(m.size(), Tfn());
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t j = 0; j < m.size(); ++j) grid(i, j) = Tfn::crisp(m(i, j));
    return validate(std::move(grid));
  }

  std::size_t size() const noexcept { return grid_.size(); }
  const Tfn& operator()(std::size_t i, std::size_t j) const { return grid_(i, j); }
  const SquareMatrix<Tfn>& grid() const noexcept { return grid_; }

  bool operator==(const FuzzyComparisonMatrix&) const = default;

 private:
  explicit FuzzyComparisonMatrix(SquareMatrix<Tfn> grid) : grid_(std::move(grid)) {}
  SquareMatrix<Tfn> grid_;
};

struct FuzzyWeightVector {
  std::vector<Tfn> fuzzy;         // w~_i
  std::vector<double> crisp;      // W_i, centroid of w~_i
  std::vector<double> normalized; // W_norm,i

  std::size_t size() const noexcept { return fuzzy.size(); }
};

/// w~_i = r~_i (x) (sum_k r~_k)^-1 with r~_i the fuzzy geometric mean of row i,
/// then centroid defuzzification and normalization.
inline FuzzyWeightVector fuzzy_weights(const FuzzyComparisonMatrix& m) {
  const std::size_t n = m.size();
  std::vector<Tfn> row_means;
  row_means.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Tfn product = m(i, 0);
    for (std::size_t j = 1; j < n; ++j) product = tfn_mul(product, m(i, j));
    row_means.push_back(tfn_nth_root(product, n));
  }
  Tfn total = row_means.front();
  for (std::size_t i = 1; i < n; ++i) total = tfn_add(total, row_means[i]);
  const Tfn inverse_total = tfn_reciprocal(total);

  FuzzyWeightVector out;
  out.fuzzy.reserve(n);
  out.crisp.reserve(n);
  for (const Tfn& r : row_means) {
    out.fuzzy.push_back(tfn_mul(r, inverse_total));
    out.crisp.push_back(defuzzify(out.fuzzy.back()));
  }
  out.normalized = normalize(out.crisp);
  check_normalized(out.normalized, "fuzzy normalized weights");
  return out;
}

/// Same aggregation as the crisp scorer, applied to defuzzified and
/// normalized weights.
inline std::vector<double> fuzzy_score_alternatives(std::span<const double> criteria_normalized,
                                                    std::span<const std::vector<double>> alternative_normalized) {
  return weighted_scores(criteria_normalized, alternative_normalized);
}

}  // namespace ahp
