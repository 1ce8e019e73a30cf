#pragma once

// Turning importance ranks and raw indicator values into crisp and fuzzy
// pairwise-comparison matrices.

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ahp/crisp.hpp"
#include "ahp/decision_log.hpp"
#include "ahp/error.hpp"
#include "ahp/fuzzy.hpp"
#include "ahp/hierarchy.hpp"

namespace ahp {

enum class RuleKind { DirectRatio, SaatyDifference };
enum class MissingPolicy { ExcludeAlternative, EpsilonFloor };

inline std::string_view to_string(RuleKind k) {
  return k == RuleKind::DirectRatio ? "direct_ratio" : "saaty_difference";
}
inline std::string_view to_string(MissingPolicy p) {
  return p == MissingPolicy::ExcludeAlternative ? "exclude_alternative" : "epsilon_floor";
}
inline RuleKind parse_rule_kind(std::string_view s) {
  if (s == "direct_ratio") return RuleKind::DirectRatio;
  if (s == "saaty_difference") return RuleKind::SaatyDifference;
  fail(ErrorCode::InvalidConfig, "unknown elicitation rule '" + std::string(s) + "'");
}
inline MissingPolicy parse_missing_policy(std::string_view s) {
  if (s == "exclude_alternative") return MissingPolicy::ExcludeAlternative;
  if (s == "epsilon_floor") return MissingPolicy::EpsilonFloor;
  fail(ErrorCode::InvalidConfig, "unknown missing-data policy '" + std::string(s) + "'");
}

struct ElicitationRule {
  RuleKind kind = RuleKind::DirectRatio;
  double clip_high = 9.0;
  MissingPolicy missing_policy = MissingPolicy::ExcludeAlternative;
  double epsilon = 1e-6;  // substitute value for missing cells under EpsilonFloor

  double clip_low() const { return 1.0 / clip_high; }

  void validate() const {
    require(std::isfinite(clip_high) && clip_high >= 1.0, ErrorCode::InvalidConfig, "clip_high must be >= 1");
    require(missing_policy != MissingPolicy::EpsilonFloor || (std::isfinite(epsilon) && epsilon > 0.0),
            ErrorCode::InvalidConfig, "epsilon_floor requires epsilon > 0");
  }

  bool operator==(const ElicitationRule&) const = default;
};

namespace detail {

/// (f_i - f_j) + 1 when f_i >= f_j, otherwise the reciprocal of the reverse.
inline double saaty_difference(double fi, double fj) {
  return fi >= fj ? (fi - fj) + 1.0 : 1.0 / ((fj - fi) + 1.0);
}

/// Builds the matrix from the upper-triangle judgment `judge(i, j)`,
/// clipping to [1/clip_high, clip_high] and mirroring the clipped value so
/// a_ji = 1 / a_ij holds after clipping.
template <typename Judge>
ComparisonMatrix build_reciprocal(std::size_t n, const ElicitationRule& rule, Judge&& judge, DecisionLog* log,
                                  const std::string& subject, std::span<const std::size_t> labels = {}) {
  SquareMatrix<double> grid(n, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto [forward, backward] = judge(i, j);
      const double clipped = std::clamp(forward, rule.clip_low(), rule.clip_high);
      if (clipped != forward) {
        const std::size_t li = labels.empty() ? i : labels[i];
        const std::size_t lj = labels.empty() ? j : labels[j];
        note(log, "clip", subject,
             "a(" + std::to_string(li + 1) + "," + std::to_string(lj + 1) + ") = " + std::to_string(forward) +
                 " clipped to " + std::to_string(clipped));
        grid(i, j) = clipped;
        grid(j, i) = 1.0 / clipped;
      } else {
        grid(i, j) = forward;
        grid(j, i) = backward;
      }
    }
  }
  return ComparisonMatrix::validate(std::move(grid));
}

/// Maps values linearly onto integer grades 1..9 (min -> 1, max -> 9).
inline std::vector<double> bin_to_grades(std::span<const double> values) {
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  std::vector<double> grades(values.size(), 1.0);
  if (hi == lo) return grades;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double bin = std::floor((values[i] - lo) / (hi - lo) * 9.0);
    grades[i] = 1.0 + std::min(8.0, bin);
  }
  return grades;
}

}  // namespace detail

/// Criteria-level judgments from final importance ranks.
inline ComparisonMatrix importance_to_matrix(std::span<const int> final_importances, const ElicitationRule& rule,
                                             DecisionLog* log = nullptr, const std::string& subject = "criteria") {
  rule.validate();
  require(!final_importances.empty(), ErrorCode::EmptyList, "no importances given");
  for (int f : final_importances)
    require(f >= 1, ErrorCode::NonPositiveImportance, "importance " + std::to_string(f) + " < 1");
  const auto judge = [&](std::size_t i, std::size_t j) -> std::pair<double, double> {
    const double fi = final_importances[i];
    const double fj = final_importances[j];
    if (rule.kind == RuleKind::DirectRatio) return {fi / fj, fj / fi};
    return {detail::saaty_difference(fi, fj), detail::saaty_difference(fj, fi)};
  };
  return detail::build_reciprocal(final_importances.size(), rule, judge, log, subject);
}

/// Alternative-level matrix for one sub-criterion, together with the
/// positions (into the original value list) of the alternatives it covers.
struct LocalComparison {
  ComparisonMatrix matrix;
  std::vector<std::size_t> members;
};

/// Alternative-level judgments for one sub-criterion from raw indicator
/// values. Missing cells follow `rule.missing_policy`; zero values under
/// direct_ratio are floored to 1e-3 x the smallest positive value.
inline LocalComparison indicators_to_matrix(std::span<const std::optional<double>> values, Direction direction,
                                            const ElicitationRule& rule, DecisionLog* log = nullptr,
                                            const std::string& subject = "indicator",
                                            std::span<const std::string> names = {}) {
  rule.validate();
  const auto name_of = [&](std::size_t i) { return i < names.size() ? names[i] : "#" + std::to_string(i + 1); };

  std::vector<std::size_t> members;
  std::vector<double> usable;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i]) {
      require(*values[i] >= 0.0 && std::isfinite(*values[i]), ErrorCode::NegativeValue,
              subject + ": value for " + name_of(i));
      members.push_back(i);
      usable.push_back(*values[i]);
    } else if (rule.missing_policy == MissingPolicy::EpsilonFloor) {
      note(log, "missing_epsilon_floor", subject,
           name_of(i) + " missing; substituted " + std::to_string(rule.epsilon));
      members.push_back(i);
      usable.push_back(rule.epsilon);
    } else {
      note(log, "missing_excluded", subject, name_of(i) + " missing; excluded with local weight 0");
    }
  }
  require(usable.size() >= 2, ErrorCode::TooFewAlternatives,
          subject + ": " + std::to_string(usable.size()) + " usable alternative(s)");
  require(std::any_of(usable.begin(), usable.end(), [](double v) { return v > 0.0; }), ErrorCode::AllValuesZero,
          subject + ": every value is zero");

  if (rule.kind == RuleKind::DirectRatio) {
    double smallest_positive = std::numeric_limits<double>::infinity();
    for (double v : usable)
      if (v > 0.0) smallest_positive = std::min(smallest_positive, v);
    const double floor_value = smallest_positive * 1e-3;
    for (std::size_t i = 0; i < usable.size(); ++i) {
      if (usable[i] == 0.0) {
        note(log, "zero_floor", subject,
             name_of(members[i]) + " is 0; floored to " + std::to_string(floor_value) + " before ratioing");
        usable[i] = floor_value;
      }
    }
    if (direction == Direction::LowerIsBetter)
      for (double& v : usable) v = 1.0 / v;
    const auto judge = [&](std::size_t i, std::size_t j) -> std::pair<double, double> {
      return {usable[i] / usable[j], usable[j] / usable[i]};
    };
    return {detail::build_reciprocal(usable.size(), rule, judge, log, subject, members), std::move(members)};
  }

  if (direction == Direction::LowerIsBetter)
    for (double& v : usable) v = -v;
  const std::vector<double> grades = detail::bin_to_grades(usable);
  const auto judge = [&](std::size_t i, std::size_t j) -> std::pair<double, double> {
    return {detail::saaty_difference(grades[i], grades[j]), detail::saaty_difference(grades[j], grades[i])};
  };
  return {detail::build_reciprocal(usable.size(), rule, judge, log, subject, members), std::move(members)};
}

/// Convenience form for complete data.
inline ComparisonMatrix indicators_to_matrix(std::span<const double> values, Direction direction,
                                             const ElicitationRule& rule, DecisionLog* log = nullptr) {
  std::vector<std::optional<double>> wrapped(values.begin(), values.end());
  return indicators_to_matrix(wrapped, direction, rule, log).matrix;
}

/// Spreads weights computed over `members` back onto all `count`
/// alternatives; excluded alternatives get weight 0.
inline std::vector<double> expand_weights(std::span<const double> weights, std::span<const std::size_t> members,
                                          std::size_t count) {
  require(weights.size() == members.size(), ErrorCode::DimensionMismatch, "weights do not match member list");
  std::vector<double> out(count, 0.0);
  for (std::size_t i = 0; i < members.size(); ++i) out.at(members[i]) = weights[i];
  return out;
}

// ---------------------------------------------------------------------------
// Fuzzy scale

/// Linguistic grade 1..9 -> TFN, plus the reciprocal TFNs for grades 2..9.
struct FuzzyScale {
  std::array<Tfn, 9> grades;
  std::array<std::string, 9> labels;
  std::array<Tfn, 8> reciprocals;  // reciprocals[g - 2] pairs with grades[g - 1]

  const Tfn& grade(int g) const { return grades.at(static_cast<std::size_t>(g - 1)); }
  const Tfn& reciprocal(int g) const { return reciprocals.at(static_cast<std::size_t>(g - 2)); }
};

inline constexpr const char* kDefaultFuzzyScaleDocument = R"({
  "name": "triangular fuzzy scale",
  "grades": [
    {"grade": 1, "tfn": [1, 1, 1], "label": "equal importance"},
    {"grade": 2, "tfn": [1, 2, 3], "label": "intermediate values"},
    {"grade": 3, "tfn": [2, 3, 4], "label": "moderate importance"},
    {"grade": 4, "tfn": [3, 4, 5], "label": "intermediate values"},
    {"grade": 5, "tfn": [4, 5, 6], "label": "strong importance"},
    {"grade": 6, "tfn": [5, 6, 7], "label": "intermediate values"},
    {"grade": 7, "tfn": [6, 7, 8], "label": "very strong importance"},
    {"grade": 8, "tfn": [7, 8, 9], "label": "intermediate values"},
    {"grade": 9, "tfn": [8, 9, 9], "label": "extreme importance"}
  ],
  "reciprocals": [
    {"grade": 2, "tfn": ["1/3", "1/2", "1"]},
    {"grade": 3, "tfn": ["1/4", "1/3", "1/2"]},
    {"grade": 4, "tfn": ["1/5", "1/4", "1/3"]},
    {"grade": 5, "tfn": ["1/6", "1/5", "1/4"]},
    {"grade": 6, "tfn": ["1/7", "1/6", "1/5"]},
    {"grade": 7, "tfn": ["1/8", "1/7", "1/6"]},
    {"grade": 8, "tfn": ["1/9", "1/8", "1/7"]},
    {"grade": 9, "tfn": ["1/9", "1/9", "1/8"]}
  ]
}
)";

namespace detail {

/// Accepts a JSON number or a "p/q" fraction string.
inline double scale_component(const Json& v, const std::string& where) {
  if (v.is_number()) return v.get<double>();
  require(v.is_string(), ErrorCode::InvalidConfig, where + ": expected number or fraction");
  const auto s = v.get<std::string>();
  const auto slash = s.find('/');
  if (slash == std::string::npos) {
    const auto x = parse_number(trim(s));
    require(x.has_value(), ErrorCode::InvalidConfig, where + ": '" + s + "'");
    return *x;
  }
  const auto num = parse_number(trim(s.substr(0, slash)));
  const auto den = parse_number(trim(s.substr(slash + 1)));
  require(num && den && *den != 0.0, ErrorCode::InvalidConfig, where + ": '" + s + "'");
  return *num / *den;
}

inline Tfn scale_tfn(const Json& node, const std::string& where) {
  const Json& t = member(node, "tfn", where);
  require(t.is_array() && t.size() == 3, ErrorCode::InvalidConfig, where + ": tfn must have 3 components");
  return Tfn(scale_component(t[0], where), scale_component(t[1], where), scale_component(t[2], where));
}

}  // namespace detail

/// Parses a scale document. Grade 1 must be (1,1,1) and every reciprocal row
/// must equal tfn_reciprocal of its grade.
inline FuzzyScale load_fuzzy_scale(const Json& doc) {
  FuzzyScale scale;
  std::array<bool, 9> have_grade{};
  std::array<bool, 8> have_reciprocal{};
  for (const Json& g : detail::member(doc, "grades", "scale")) {
    const int grade = g.at("grade").get<int>();
    require(grade >= 1 && grade <= 9, ErrorCode::InvalidConfig, "scale grade out of 1..9");
    scale.grades[grade - 1] = detail::scale_tfn(g, "scale grade " + std::to_string(grade));
    if (g.contains("label")) scale.labels[grade - 1] = g.at("label").get<std::string>();
    have_grade[grade - 1] = true;
  }
  for (const Json& g : detail::member(doc, "reciprocals", "scale")) {
    const int grade = g.at("grade").get<int>();
    require(grade >= 2 && grade <= 9, ErrorCode::InvalidConfig, "reciprocal grade out of 2..9");
    scale.reciprocals[grade - 2] = detail::scale_tfn(g, "scale reciprocal " + std::to_string(grade));
    have_reciprocal[grade - 2] = true;
  }
  for (int g = 1; g <= 9; ++g)
    require(have_grade[g - 1], ErrorCode::InvalidConfig, "scale lacks grade " + std::to_string(g));
  require(scale.grade(1) == Tfn(), ErrorCode::InvalidConfig, "grade 1 must be (1,1,1)");
  for (int g = 2; g <= 9; ++g) {
    require(have_reciprocal[g - 2], ErrorCode::InvalidConfig, "scale lacks reciprocal of grade " + std::to_string(g));
    const Tfn expected = tfn_reciprocal(scale.grade(g));
    const Tfn& got = scale.reciprocal(g);
    const auto close = [](double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)); };
    require(close(got.l(), expected.l()) && close(got.m(), expected.m()) && close(got.u(), expected.u()),
            ErrorCode::InvalidConfig, "reciprocal row for grade " + std::to_string(g) + " is not 1/(grade TFN)");
  }
  return scale;
}

inline const FuzzyScale& default_fuzzy_scale() {
  static const FuzzyScale scale = load_fuzzy_scale(Json::parse(kDefaultFuzzyScaleDocument));
  return scale;
}

inline FuzzyScale load_fuzzy_scale_file(const std::string& path) {
  try {
    return load_fuzzy_scale(Json::parse(read_file(path)));
  } catch (const Json::exception& e) {
    fail(ErrorCode::ParseError, path + ": " + e.what());
  }
}

/// Nearest grade 1..9 of a crisp judgment >= 1 (halves round up).
inline int nearest_grade(double a) {
  return static_cast<int>(std::clamp(std::floor(a + 0.5), 1.0, 9.0));
}

/// Fuzzy counterpart of one crisp judgment on the nine-point scale.
inline Tfn fuzzify_entry(double a, const FuzzyScale& scale) {
  constexpr double slack = 1e-12;
  require(a >= 1.0 / 9.0 - slack && a <= 9.0 + slack, ErrorCode::EntryOutOfScale,
          std::to_string(a) + " outside [1/9, 9]");
  if (a >= 1.0) return scale.grade(nearest_grade(a));
  const int g = nearest_grade(1.0 / a);
  return g == 1 ? Tfn() : scale.reciprocal(g);
}

/// Replaces every crisp judgment by its scale TFN. The entry of each pair
/// that is >= 1 takes the grade TFN and its mirror takes the reciprocal, so
/// fuzzy reciprocity holds exactly.
inline FuzzyComparisonMatrix fuzzify_matrix(const ComparisonMatrix& m, const FuzzyScale& scale = default_fuzzy_scale()) {
  const std::size_t n = m.size();
  SquareMatrix<Tfn> grid(n, Tfn());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool upper_dominates = m(i, j) >= 1.0;
      const std::size_t r = upper_dominates ? i : j;
      const std::size_t c = upper_dominates ? j : i;
      const Tfn strong = fuzzify_entry(m(r, c), scale);
      grid(r, c) = strong;
      grid(c, r) = tfn_reciprocal(strong);
    }
  }
  return FuzzyComparisonMatrix::validate(std::move(grid));
}

}  // namespace ahp
