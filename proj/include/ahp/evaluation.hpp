#pragma once

// End-to-end evaluation: elicit matrices from the hierarchy and indicator
// data, weight them with crisp and/or fuzzy AHP, score, rank and check the
// result against any reference rankings carried by the hierarchy.

#include <optional>
#include <string>
#include <vector>

#include "ahp/analysis.hpp"
#include "ahp/crisp.hpp"
#include "ahp/decision_log.hpp"
#include "ahp/elicitation.hpp"
#include "ahp/fuzzy.hpp"
#include "ahp/hierarchy.hpp"

namespace ahp {

enum class MethodSelection { Ahp, Fahp, Both };

inline std::string_view to_string(MethodSelection m) {
  switch (m) {
    case MethodSelection::Ahp: return "ahp";
    case MethodSelection::Fahp: return "fahp";
    case MethodSelection::Both: return "both";
  }
  return "both";
}
inline MethodSelection parse_method_selection(std::string_view s) {
  if (s == "ahp") return MethodSelection::Ahp;
  if (s == "fahp") return MethodSelection::Fahp;
  if (s == "both") return MethodSelection::Both;
  fail(ErrorCode::InvalidConfig, "unknown method '" + std::string(s) + "'");
}

struct EvaluationOptions {
  MethodSelection method = MethodSelection::Both;
  ElicitationRule criteria_rule{RuleKind::SaatyDifference};
  ElicitationRule indicator_rule{RuleKind::DirectRatio};
  bool strict_consistency = false;

  bool operator==(const EvaluationOptions&) const = default;
};

struct RunConfig {
  EvaluationOptions options;
  Cohort cohort = Cohort::Ages15To34;
  std::string hierarchy_path;
  std::string indicators_path;
  std::optional<std::string> scale_path;
};

/// Consistency verdict for one named matrix.
struct MatrixConsistency {
  std::string subject;
  ConsistencyVerdict verdict;

  bool operator==(const MatrixConsistency&) const = default;
};

struct LocalWeights {
  std::string sub_criterion;
  std::vector<double> weights;        // over all alternatives; excluded ones get 0
  std::vector<std::string> excluded;
  std::vector<std::optional<Tfn>> fuzzy;  // fahp only; empty for excluded alternatives

  bool operator==(const LocalWeights&) const = default;
};

struct MethodResult {
  Method method = Method::Ahp;
  std::vector<double> criteria_weights;   // w (ahp) or W_norm (fahp)
  std::vector<Tfn> criteria_fuzzy_weights;  // fahp only
  std::vector<LocalWeights> local;
  std::vector<double> scores;
  Ranking ranking;

  bool operator==(const MethodResult&) const = default;
};

struct ReferenceCheck {
  Method method = Method::Ahp;
  Cohort cohort = Cohort::None;
  std::string source;
  std::vector<std::string> expected;
  std::vector<std::string> observed;
  double tau = 1.0;
  bool exact_match = false;
  bool top_three_match = false;
  bool bottom_two_match = false;

  bool operator==(const ReferenceCheck&) const = default;
};

struct EvaluationReport {
  std::string schema_version = "1";
  MethodSelection method = MethodSelection::Both;
  Cohort cohort = Cohort::None;
  RuleKind criteria_rule = RuleKind::SaatyDifference;
  RuleKind indicator_rule = RuleKind::DirectRatio;
  MissingPolicy missing_policy = MissingPolicy::ExcludeAlternative;
  bool strict_consistency = false;

  std::string goal;
  std::vector<std::string> alternatives;
  std::vector<std::string> sub_criteria;

  MatrixConsistency criteria_consistency;
  std::optional<double> reference_criteria_gci;
  std::vector<MatrixConsistency> local_consistency;  // one per sub-criterion

  std::vector<MethodResult> methods;
  std::optional<MethodComparison> comparison;  // populated when both methods ran
  std::vector<ReferenceCheck> reference_checks;
  DecisionLog decisions;

  const MethodResult* result(Method m) const {
    for (const auto& r : methods)
      if (r.method == m) return &r;
    return nullptr;
  }

  bool operator==(const EvaluationReport&) const = default;
};

namespace detail {

inline void gate(const MatrixConsistency& mc, bool strict, DecisionLog& log) {
  if (mc.verdict.consistent) return;
  const std::string detail = "GCI " + std::to_string(mc.verdict.gci) + " exceeds threshold " +
                             std::to_string(mc.verdict.threshold) + " (n = " + std::to_string(mc.verdict.n) + ")";
  if (strict) fail(ErrorCode::ConsistencyGateFailure, mc.subject + ": " + detail);
  note(&log, "consistency_warning", mc.subject, detail);
}

inline ReferenceCheck check_reference(const ReferenceRanking& ref, const Ranking& observed) {
  ReferenceCheck check;
  check.method = ref.method;
  check.cohort = ref.cohort;
  check.source = ref.source;
  check.expected = ref.order;
  check.observed = observed.order();

  Ranking expected;
  expected.method = ref.method;
  expected.cohort = ref.cohort;
  for (std::size_t i = 0; i < ref.order.size(); ++i)
    expected.entries.push_back({ref.order[i], 0.0, static_cast<int>(i) + 1, false});
  check.tau = kendall_tau(expected, observed);

  const auto ranks_match = [&](std::size_t from, std::size_t to) {
    for (std::size_t i = from; i < to; ++i)
      if (observed.rank_of(ref.order[i]) != static_cast<int>(i) + 1) return false;
    return true;
  };
  const std::size_t k = ref.order.size();
  check.exact_match = ranks_match(0, k);
  check.top_three_match = ranks_match(0, std::min<std::size_t>(3, k));
  check.bottom_two_match = ranks_match(k >= 2 ? k - 2 : 0, k);
  return check;
}

inline std::string join(const std::vector<std::string>& ids) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) out += (i ? " > " : "") + ids[i];
  return out;
}

}  // namespace detail

/// Criteria-level matrix elicited from the hierarchy's final importances.
inline ComparisonMatrix criteria_matrix(const Hierarchy& hierarchy, const ElicitationRule& rule,
                                        DecisionLog* log = nullptr) {
  const std::vector<int> importances = hierarchy.final_importances();
  return importance_to_matrix(importances, rule, log, "criteria");
}

/// Runs the full pipeline on in-memory inputs. With both methods the fuzzy
/// pipeline fuzzifies exactly the crisp matrices the crisp pipeline used.
inline EvaluationReport run_evaluation(const Hierarchy& hierarchy, const IndicatorTable& table,
                                       const EvaluationOptions& options, const FuzzyScale& scale = default_fuzzy_scale()) {
  require(table.alternatives == hierarchy.alternatives, ErrorCode::AlternativeSetMismatch,
          "indicator table alternatives differ from the hierarchy");
  const std::vector<SubCriterion> subs = hierarchy.flattened();
  require(table.sub_criteria.size() == subs.size(), ErrorCode::DimensionMismatch,
          "indicator table columns differ from the hierarchy");

  EvaluationReport report;
  report.method = options.method;
  report.cohort = table.cohort;
  report.criteria_rule = options.criteria_rule.kind;
  report.indicator_rule = options.indicator_rule.kind;
  report.missing_policy = options.indicator_rule.missing_policy;
  report.strict_consistency = options.strict_consistency;
  report.goal = hierarchy.goal;
  report.alternatives = hierarchy.alternatives;
  for (const auto& s : subs) report.sub_criteria.push_back(s.id);
  report.reference_criteria_gci = hierarchy.reference_criteria_gci;
  DecisionLog& log = report.decisions;

  // Criteria level.
  const ComparisonMatrix criteria = criteria_matrix(hierarchy, options.criteria_rule, &log);
  const PriorityVector criteria_pv = priority_geometric_mean(criteria);
  report.criteria_consistency = {"criteria", *criteria_pv.consistency};
  detail::gate(report.criteria_consistency, options.strict_consistency, log);

  // Alternative level, one matrix per sub-criterion.
  const std::size_t alt_count = hierarchy.alternatives.size();
  std::vector<LocalComparison> local;
  local.reserve(subs.size());
  for (std::size_t k = 0; k < subs.size(); ++k) {
    const auto column = table.column(k);
    local.push_back(indicators_to_matrix(column, subs[k].direction, options.indicator_rule, &log, subs[k].id,
                                         hierarchy.alternatives));
    const PriorityVector pv = priority_geometric_mean(local.back().matrix);
    report.local_consistency.push_back({subs[k].id, *pv.consistency});
    detail::gate(report.local_consistency.back(), options.strict_consistency, log);
  }

  const auto excluded_of = [&](const LocalComparison& lc) {
    std::vector<std::string> out;
    std::vector<bool> in(alt_count, false);
    for (std::size_t m : lc.members) in[m] = true;
    for (std::size_t a = 0; a < alt_count; ++a)
      if (!in[a]) out.push_back(hierarchy.alternatives[a]);
    return out;
  };

  if (options.method != MethodSelection::Fahp) {
    MethodResult result;
    result.method = Method::Ahp;
    result.criteria_weights = criteria_pv.weights;
    std::vector<std::vector<double>> local_weights;
    for (std::size_t k = 0; k < subs.size(); ++k) {
      const PriorityVector pv = priority_geometric_mean(local[k].matrix);
      LocalWeights lw;
      lw.sub_criterion = subs[k].id;
      lw.weights = expand_weights(pv.weights, local[k].members, alt_count);
      check_normalized(lw.weights, "local weights " + subs[k].id);
      lw.excluded = excluded_of(local[k]);
      local_weights.push_back(lw.weights);
      result.local.push_back(std::move(lw));
    }
    result.scores = weighted_scores(result.criteria_weights, local_weights);
    result.ranking = rank(hierarchy.alternatives, result.scores, Method::Ahp, table.cohort, &log);
    report.methods.push_back(std::move(result));
  }

  if (options.method != MethodSelection::Ahp) {
    note(&log, "fuzzy_approximation", "fahp",
         "TFN products, roots and reciprocals use the componentwise triangular approximation; "
         "crisp judgments are mapped to the nearest scale grade");
    MethodResult result;
    result.method = Method::Fahp;
    const FuzzyWeightVector criteria_fw = fuzzy_weights(fuzzify_matrix(criteria, scale));
    result.criteria_weights = criteria_fw.normalized;
    result.criteria_fuzzy_weights = criteria_fw.fuzzy;
    std::vector<std::vector<double>> local_weights;
    for (std::size_t k = 0; k < subs.size(); ++k) {
      const FuzzyWeightVector fw = fuzzy_weights(fuzzify_matrix(local[k].matrix, scale));
      LocalWeights lw;
      lw.sub_criterion = subs[k].id;
      lw.weights = expand_weights(fw.normalized, local[k].members, alt_count);
      check_normalized(lw.weights, "fuzzy local weights " + subs[k].id);
      lw.excluded = excluded_of(local[k]);
      lw.fuzzy.assign(alt_count, std::nullopt);
      for (std::size_t i = 0; i < local[k].members.size(); ++i) lw.fuzzy[local[k].members[i]] = fw.fuzzy[i];
      local_weights.push_back(lw.weights);
      result.local.push_back(std::move(lw));
    }
    result.scores = fuzzy_score_alternatives(result.criteria_weights, local_weights);
    result.ranking = rank(hierarchy.alternatives, result.scores, Method::Fahp, table.cohort, &log);
    report.methods.push_back(std::move(result));
  }

  if (report.methods.size() == 2)
    report.comparison = compare_methods(report.methods[0].ranking, report.methods[1].ranking);

  for (const auto& ref : hierarchy.reference_rankings) {
    if (ref.cohort != table.cohort) continue;
    const MethodResult* result = report.result(ref.method);
    if (!result) continue;
    ReferenceCheck check = detail::check_reference(ref, result->ranking);
    if (!check.exact_match) {
      note(&log, "reference_deviation", std::string(to_string(ref.method)) + "/" + std::string(to_string(ref.cohort)),
           "expected " + detail::join(check.expected) + "; observed " + detail::join(check.observed) +
               "; tau = " + std::to_string(check.tau));
    }
    report.reference_checks.push_back(std::move(check));
  }
  return report;
}

/// Perturbs every criteria-level judgment by each factor and re-ranks with
/// `method`, holding the alternative-level weights fixed at their baseline.
inline SweepReport sweep_criteria(const Hierarchy& hierarchy, const IndicatorTable& table,
                                  const EvaluationOptions& options, Method method, std::span<const double> factors,
                                  const FuzzyScale& scale = default_fuzzy_scale()) {
  EvaluationOptions single = options;
  single.method = method == Method::Ahp ? MethodSelection::Ahp : MethodSelection::Fahp;
  single.strict_consistency = false;
  const EvaluationReport baseline = run_evaluation(hierarchy, table, single, scale);
  std::vector<std::vector<double>> local;
  for (const auto& lw : baseline.methods.front().local) local.push_back(lw.weights);

  const auto pipeline = [&](const ComparisonMatrix& m) {
    const std::vector<double> weights =
        method == Method::Ahp ? priority_geometric_mean(m).weights : fuzzy_weights(fuzzify_matrix(m, scale)).normalized;
    return rank(hierarchy.alternatives, weighted_scores(weights, local), method, table.cohort);
  };
  return sensitivity_sweep(criteria_matrix(hierarchy, options.criteria_rule), pipeline, factors,
                           options.criteria_rule.clip_high);
}

/// File-based entry point: loads the hierarchy, indicators and optional
/// scale named by `config`, then evaluates.
inline EvaluationReport run_evaluation(const RunConfig& config) {
  const Hierarchy hierarchy = load_hierarchy_file(config.hierarchy_path);
  const IndicatorTable table = load_indicators_file(config.indicators_path, hierarchy, config.cohort);
  if (config.scale_path) {
    const FuzzyScale scale = load_fuzzy_scale_file(*config.scale_path);
    return run_evaluation(hierarchy, table, config.options, scale);
  }
  return run_evaluation(hierarchy, table, config.options);
}

}  // namespace ahp
