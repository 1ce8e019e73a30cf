// Command-line front end for the evaluation pipeline.
//
// Exit codes: 0 ok, 1 bad input or usage, 2 consistency gate failure,
// 3 internal invariant violation.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ahp/ahp.hpp"

namespace {

struct Options {
  std::string hierarchy;
  std::string indicators;
  std::string scale;
  std::string method = "both";
  std::string cohort = "ages_15_34";
  std::string criteria_rule = "saaty_difference";
  std::string indicator_rule = "direct_ratio";
  std::string missing_policy = "exclude_alternative";
  double epsilon = 1e-6;
  double clip_high = 9.0;
  bool strict = false;
  std::string format;
  std::string out;
  std::vector<double> factors{1.0 / 3.0, 0.5, 2.0, 3.0};
};

ahp::EvaluationOptions evaluation_options(const Options& o) {
  ahp::EvaluationOptions opts;
  opts.method = ahp::parse_method_selection(o.method);
  opts.criteria_rule.kind = ahp::parse_rule_kind(o.criteria_rule);
  opts.criteria_rule.clip_high = o.clip_high;
  opts.indicator_rule.kind = ahp::parse_rule_kind(o.indicator_rule);
  opts.indicator_rule.clip_high = o.clip_high;
  opts.indicator_rule.missing_policy = ahp::parse_missing_policy(o.missing_policy);
  opts.indicator_rule.epsilon = o.epsilon;
  opts.criteria_rule.validate();
  opts.indicator_rule.validate();
  opts.strict_consistency = o.strict;
  return opts;
}

ahp::Cohort cohort_of(const std::string& s) {
  if (s == "15-34") return ahp::Cohort::Ages15To34;
  if (s == "35-59") return ahp::Cohort::Ages35To59;
  return ahp::parse_cohort(s);
}

ahp::FuzzyScale scale_of(const Options& o) {
  return o.scale.empty() ? ahp::default_fuzzy_scale() : ahp::load_fuzzy_scale_file(o.scale);
}

void write_output(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(o.out, std::ios::binary);
  if (!file) ahp::fail(ahp::ErrorCode::IoError, "cannot write '" + o.out + "'");
  file << text;
}

ahp::EvaluationReport evaluate(const Options& o, std::optional<ahp::MethodSelection> force = std::nullopt) {
  if (o.indicators.empty()) ahp::fail(ahp::ErrorCode::InvalidConfig, "--indicators is required");
  ahp::RunConfig config;
  config.options = evaluation_options(o);
  if (force) config.options.method = *force;
  config.cohort = cohort_of(o.cohort);
  config.hierarchy_path = o.hierarchy;
  config.indicators_path = o.indicators;
  if (!o.scale.empty()) config.scale_path = o.scale;
  return ahp::run_evaluation(config);
}

int run_validate(const Options& o) {
  const ahp::Hierarchy h = ahp::load_hierarchy_file(o.hierarchy);
  std::string text = "hierarchy ok: " + std::to_string(h.criteria.size()) + " criteria, " +
                     std::to_string(h.flattened().size()) + " sub-criteria, " + std::to_string(h.alternatives.size()) +
                     " alternatives\n";
  if (!o.indicators.empty()) {
    const ahp::IndicatorTable t = ahp::load_indicators_file(o.indicators, h, cohort_of(o.cohort));
    std::size_t missing = 0;
    for (const auto& row : t.cells)
      for (const auto& c : row) missing += c ? 0 : 1;
    text += "indicators ok: " + std::to_string(t.alternatives.size()) + " rows, " + std::to_string(missing) +
            " missing cells\n";
  }
  if (!o.scale.empty()) {
    ahp::load_fuzzy_scale_file(o.scale);
    text += "fuzzy scale ok\n";
  }
  write_output(o, text);
  return 0;
}

int run_weights(const Options& o) {
  const ahp::Hierarchy h = ahp::load_hierarchy_file(o.hierarchy);
  const ahp::EvaluationOptions opts = evaluation_options(o);
  const ahp::ComparisonMatrix m = ahp::criteria_matrix(h, opts.criteria_rule);
  const ahp::PriorityVector pv = ahp::priority_geometric_mean(m);
  const ahp::MatrixConsistency mc{"criteria", *pv.consistency};
  ahp::DecisionLog log;
  ahp::detail::gate(mc, opts.strict_consistency, log);

  std::vector<std::string> ids;
  for (const auto& s : h.flattened()) ids.push_back(s.id);
  const bool crisp = opts.method != ahp::MethodSelection::Fahp;
  const bool fuzzy = opts.method != ahp::MethodSelection::Ahp;
  std::optional<ahp::FuzzyWeightVector> fw;
  if (fuzzy) fw = ahp::fuzzy_weights(ahp::fuzzify_matrix(m, scale_of(o)));

  const std::string format = o.format.empty() ? "json" : o.format;
  std::string text;
  if (format == "json") {
    ahp::Json j;
    j["criteria_rule"] = ahp::to_string(opts.criteria_rule.kind);
    j["sub_criteria"] = ids;
    j["consistency"] = ahp::detail::verdict_json(mc);
    j["reference_criteria_gci"] = h.reference_criteria_gci ? ahp::detail::number(*h.reference_criteria_gci) : ahp::Json(nullptr);
    if (crisp) j["ahp"] = {{"weights", ahp::detail::numbers(pv.weights)}};
    if (fuzzy) {
      ahp::Json f;
      f["fuzzy"] = ahp::Json::array();
      for (const auto& t : fw->fuzzy) f["fuzzy"].push_back(ahp::detail::tfn_json(t));
      f["weights"] = ahp::detail::numbers(fw->normalized);
      j["fahp"] = std::move(f);
    }
    j["decisions"] = ahp::Json::array();
    for (const auto& d : log) j["decisions"].push_back({{"kind", d.kind}, {"subject", d.subject}, {"detail", d.detail}});
    text = j.dump(2) + "\n";
  } else if (format == "csv") {
    text = "sub_criterion";
    if (crisp) text += ",ahp";
    if (fuzzy) text += ",fahp_l,fahp_m,fahp_u,fahp";
    text += "\n";
    for (std::size_t k = 0; k < ids.size(); ++k) {
      text += ids[k];
      if (crisp) text += "," + ahp::format_number(pv.weights[k]);
      if (fuzzy) {
        const ahp::Tfn& t = fw->fuzzy[k];
        text += "," + ahp::format_number(t.l()) + "," + ahp::format_number(t.m()) + "," + ahp::format_number(t.u()) +
                "," + ahp::format_number(fw->normalized[k]);
      }
      text += "\n";
    }
  } else {
    ahp::parse_report_format(format);
    text = "Criteria GCI " + ahp::format_number(mc.verdict.gci, 6) + " (" +
           (mc.verdict.consistent ? "consistent" : "inconsistent") + ")\n";
    for (std::size_t k = 0; k < ids.size(); ++k) {
      text += "  " + ids[k];
      if (crisp) text += "  ahp " + ahp::format_number(pv.weights[k], 6);
      if (fuzzy) text += "  fahp " + ahp::format_number(fw->normalized[k], 6);
      text += "\n";
    }
  }
  write_output(o, text);
  return 0;
}

int run_report(const Options& o, const std::string& default_format) {
  const ahp::EvaluationReport r = evaluate(o);
  write_output(o, ahp::emit_report(r, o.format.empty() ? default_format : o.format));
  return 0;
}

int run_compare(const Options& o) {
  const ahp::EvaluationReport r = evaluate(o, ahp::MethodSelection::Both);
  const std::string format = o.format.empty() ? "text" : o.format;
  if (format != "text" && format != "text-summary") {
    write_output(o, ahp::emit_report(r, format));
    return 0;
  }
  std::string text;
  for (const auto& m : r.methods)
    text += std::string(ahp::to_string(m.method)) + ": " + ahp::detail::join(m.ranking.order()) + "\n";
  text += "kendall tau: " + ahp::format_number(r.comparison->tau, 6) + "\n";
  text += "max displacement: " + std::to_string(r.comparison->max_displacement) + "\n";
  if (!r.comparison->displaced.empty()) text += "displaced: " + ahp::detail::join(r.comparison->displaced) + "\n";
  write_output(o, text);
  return 0;
}

int run_sweep(const Options& o) {
  if (o.indicators.empty()) ahp::fail(ahp::ErrorCode::InvalidConfig, "--indicators is required");
  const ahp::Hierarchy h = ahp::load_hierarchy_file(o.hierarchy);
  const ahp::IndicatorTable t = ahp::load_indicators_file(o.indicators, h, cohort_of(o.cohort));
  ahp::EvaluationOptions opts = evaluation_options(o);
  const ahp::Method method = opts.method == ahp::MethodSelection::Fahp ? ahp::Method::Fahp : ahp::Method::Ahp;
  const ahp::SweepReport sweep = ahp::sweep_criteria(h, t, opts, method, o.factors, scale_of(o));
  std::vector<std::string> ids;
  for (const auto& s : h.flattened()) ids.push_back(s.id);
  const std::string format = o.format.empty() ? "json" : o.format;
  if (format == "json")
    write_output(o, ahp::sweep_to_json(sweep, ids).dump(2) + "\n");
  else if (format == "text" || format == "text-summary")
    write_output(o, ahp::sweep_text(sweep, ids));
  else
    ahp::fail(ahp::ErrorCode::UnsupportedFormat, "sweep supports json and text, not '" + format + "'");
  return 0;
}

int exit_code(ahp::ErrorCode code) {
  switch (code) {
    case ahp::ErrorCode::ConsistencyGateFailure: return 2;
    case ahp::ErrorCode::InvariantViolation: return 3;
    default: return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"AHP and fuzzy AHP evaluation of alternatives from indicator data"};
  app.require_subcommand(1);
  Options o;

  const auto add_common = [&](CLI::App* sub, bool indicators) {
    sub->add_option("--hierarchy", o.hierarchy, "hierarchy JSON")->required();
    if (indicators) {
      sub->add_option("--indicators", o.indicators, "indicator CSV");
      sub->add_option("--cohort", o.cohort, "ages_15_34 | ages_35_59");
      sub->add_option("--indicator-rule", o.indicator_rule, "direct_ratio | saaty_difference");
      sub->add_option("--missing-policy", o.missing_policy, "exclude_alternative | epsilon_floor");
      sub->add_option("--epsilon", o.epsilon, "floor used by epsilon_floor");
    }
    sub->add_option("--scale", o.scale, "fuzzy scale JSON");
    sub->add_option("--method", o.method, "ahp | fahp | both");
    sub->add_option("--criteria-rule", o.criteria_rule, "direct_ratio | saaty_difference");
    sub->add_option("--clip", o.clip_high, "upper bound of elicited entries");
    sub->add_flag("--strict", o.strict, "fail when a matrix exceeds its GCI threshold");
    sub->add_option("--format", o.format, "json | csv | text");
    sub->add_option("--out", o.out, "write output here instead of stdout");
  };

  auto* validate = app.add_subcommand("validate", "load and check the inputs");
  add_common(validate, true);
  auto* weights = app.add_subcommand("weights", "criteria weights from the hierarchy alone");
  add_common(weights, false);
  auto* score = app.add_subcommand("score", "full evaluation report (json by default)");
  add_common(score, true);
  auto* rank_cmd = app.add_subcommand("rank", "ranked alternatives (text by default)");
  add_common(rank_cmd, true);
  auto* compare = app.add_subcommand("compare", "AHP against fuzzy AHP rankings");
  add_common(compare, true);
  auto* sweep = app.add_subcommand("sweep", "one-at-a-time perturbation of criteria judgments");
  add_common(sweep, true);
  sweep->add_option("--factors", o.factors, "multipliers applied to each judgment")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (validate->parsed()) return run_validate(o);
    if (weights->parsed()) return run_weights(o);
    if (score->parsed()) return run_report(o, "json");
    if (rank_cmd->parsed()) return run_report(o, "text");
    if (compare->parsed()) return run_compare(o);
    if (sweep->parsed()) return run_sweep(o);
  } catch (const ahp::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 1;
}
