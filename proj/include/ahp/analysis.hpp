#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "ahp/crisp.hpp"
#include "ahp/decision_log.hpp"
#include "ahp/error.hpp"
#include "ahp/hierarchy.hpp"

namespace ahp {

struct RankedAlternative {
  std::string id;
  double score = 0.0;
  int rank = 0;
  bool tied = false;

  bool operator==(const RankedAlternative&) const = default;
};

/// Alternatives in descending score order. Tied alternatives share the
/// smaller rank number and are listed by id.
struct Ranking {
  Method method = Method::Ahp;
  Cohort cohort = Cohort::None;
  std::vector<RankedAlternative> entries;

  std::size_t size() const noexcept { return entries.size(); }

  std::vector<std::string> order() const {
    std::vector<std::string> ids;
    for (const auto& e : entries) ids.push_back(e.id);
    return ids;
  }

  int rank_of(const std::string& id) const {
    for (const auto& e : entries)
      if (e.id == id) return e.rank;
    fail(ErrorCode::AlternativeSetMismatch, "'" + id + "' not in ranking");
  }

  bool operator==(const Ranking&) const = default;
};

/// Scores closer than this are treated as tied.
inline constexpr double kTieTolerance = 1e-12;

inline Ranking rank(std::span<const std::string> ids, std::span<const double> scores, Method method = Method::Ahp,
                    Cohort cohort = Cohort::None, DecisionLog* log = nullptr) {
  require(ids.size() == scores.size(), ErrorCode::DimensionMismatch, "ids and scores differ in length");
  require(!ids.empty(), ErrorCode::EmptyList, "nothing to rank");
  std::vector<std::size_t> idx(ids.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return ids[a] < ids[b];
  });
  // Group near-equal scores; order inside a group is by id.
  for (std::size_t start = 0; start < idx.size();) {
    std::size_t end = start + 1;
    while (end < idx.size() && std::abs(scores[idx[start]] - scores[idx[end]]) <= kTieTolerance) ++end;
    std::sort(idx.begin() + start, idx.begin() + end, [&](std::size_t a, std::size_t b) { return ids[a] < ids[b]; });
    start = end;
  }

  Ranking r;
  r.method = method;
  r.cohort = cohort;
  for (std::size_t pos = 0; pos < idx.size(); ++pos) {
    RankedAlternative e{ids[idx[pos]], scores[idx[pos]], static_cast<int>(pos) + 1, false};
    if (pos > 0 && std::abs(r.entries.back().score - e.score) <= kTieTolerance) {
      e.rank = r.entries.back().rank;
      e.tied = true;
      r.entries.back().tied = true;
      note(log, "tie_break", std::string(to_string(method)) + "/" + std::string(to_string(cohort)),
           r.entries.back().id + " and " + e.id + " tied at rank " + std::to_string(e.rank) +
               "; listed by id");
    }
    r.entries.push_back(std::move(e));
  }
  return r;
}

/// Tau-a over all alternative pairs; tied pairs count as neither concordant
/// nor discordant. Defined as 1 for fewer than two alternatives.
inline double kendall_tau(const Ranking& r1, const Ranking& r2) {
  auto ids1 = r1.order();
  auto ids2 = r2.order();
  std::sort(ids1.begin(), ids1.end());
  std::sort(ids2.begin(), ids2.end());
  require(ids1 == ids2, ErrorCode::AlternativeSetMismatch, "rankings cover different alternatives");
  const std::size_t k = ids1.size();
  if (k < 2) return 1.0;
  std::vector<int> a(k), b(k);
  for (std::size_t i = 0; i < k; ++i) {
    a[i] = r1.rank_of(ids1[i]);
    b[i] = r2.rank_of(ids1[i]);
  }
  long long concordant = 0;
  long long discordant = 0;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      const long long s = static_cast<long long>(a[i] - a[j]) * static_cast<long long>(b[i] - b[j]);
      if (s > 0) ++concordant;
      if (s < 0) ++discordant;
    }
  }
  const double pairs = static_cast<double>(k * (k - 1) / 2);
  return static_cast<double>(concordant - discordant) / pairs;
}

struct MethodComparison {
  double tau = 1.0;
  std::vector<std::string> displaced;  // alternatives whose rank differs, in first-ranking order
  int max_displacement = 0;

  bool operator==(const MethodComparison&) const = default;
};

inline MethodComparison compare_methods(const Ranking& first, const Ranking& second) {
  MethodComparison out;
  out.tau = kendall_tau(first, second);
  for (const auto& e : first.entries) {
    const int d = std::abs(e.rank - second.rank_of(e.id));
    if (d > 0) out.displaced.push_back(e.id);
    out.max_displacement = std::max(out.max_displacement, d);
  }
  return out;
}

/// Multiplies one judgment a_ij by `factor` (clipped to the scale bounds)
/// and restores a_ji = 1 / a_ij.
inline ComparisonMatrix perturb_one_judgment(const ComparisonMatrix& m, std::size_t i, std::size_t j, double factor,
                                             double clip_high = 9.0) {
  require(std::isfinite(factor) && factor > 0.0, ErrorCode::NonPositiveFactor,
          "factor " + std::to_string(factor) + " must be > 0");
  require(i < m.size() && j < m.size(), ErrorCode::DimensionMismatch, "index out of range");
  require(i != j, ErrorCode::DiagonalPerturbation, "cannot perturb diagonal entry " + std::to_string(i));
  SquareMatrix<double> grid = m.grid();
  const double value = std::clamp(grid(i, j) * factor, 1.0 / clip_high, clip_high);
  grid(i, j) = value;
  grid(j, i) = 1.0 / value;
  return ComparisonMatrix::validate(std::move(grid));
}

struct SweepEntry {
  std::size_t i = 0;
  std::size_t j = 0;
  double factor = 1.0;
  ConsistencyVerdict consistency;
  std::vector<std::string> order;
  bool changed = false;
  std::vector<std::pair<std::string, std::string>> reversals;  // pairs whose relative order flipped

  bool operator==(const SweepEntry&) const = default;
};

struct SweepReport {
  Ranking baseline;
  std::vector<SweepEntry> entries;
  std::map<std::string, int> rank_changes;  // alternative -> perturbations that moved it

  std::size_t changed_count() const {
    return static_cast<std::size_t>(std::count_if(entries.begin(), entries.end(), [](const auto& e) { return e.changed; }));
  }
};

/// Re-runs `pipeline` (ComparisonMatrix -> Ranking) for every upper-triangle
/// judgment of `base` and every factor. Entries come out in (i, j, factor)
/// order.
template <typename Pipeline>
SweepReport sensitivity_sweep(const ComparisonMatrix& base, Pipeline&& pipeline, std::span<const double> factors,
                              double clip_high = 9.0) {
  SweepReport report;
  report.baseline = pipeline(base);
  for (const auto& e : report.baseline.entries) report.rank_changes[e.id] = 0;
  for (std::size_t i = 0; i < base.size(); ++i) {
    for (std::size_t j = i + 1; j < base.size(); ++j) {
      for (double factor : factors) {
        const ComparisonMatrix perturbed = perturb_one_judgment(base, i, j, factor, clip_high);
        const Ranking ranking = pipeline(perturbed);
        SweepEntry entry;
        entry.i = i;
        entry.j = j;
        entry.factor = factor;
        const std::vector<double> w = geometric_mean_weights(perturbed.grid());
        entry.consistency = check_consistency(gci(perturbed, w), perturbed.size());
        entry.order = ranking.order();
        const auto& ids = report.baseline.entries;
        for (std::size_t a = 0; a < ids.size(); ++a) {
          const int before = report.baseline.rank_of(ids[a].id);
          const int after = ranking.rank_of(ids[a].id);
          if (before != after) {
            entry.changed = true;
            ++report.rank_changes[ids[a].id];
          }
          for (std::size_t b = a + 1; b < ids.size(); ++b) {
            const int before_gap = before - report.baseline.rank_of(ids[b].id);
            const int after_gap = after - ranking.rank_of(ids[b].id);
            if (static_cast<long long>(before_gap) * after_gap < 0) entry.reversals.emplace_back(ids[a].id, ids[b].id);
          }
        }
        report.entries.push_back(std::move(entry));
      }
    }
  }
  return report;
}

}  // namespace ahp
