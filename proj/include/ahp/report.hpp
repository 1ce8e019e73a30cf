#pragma once

// Report emission. JSON is the complete, versioned structure and parses back
// into an EvaluationReport; CSV holds one ranking table per method; the text
// summary is meant for humans.

#include <charconv>
#include <cstdio>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "ahp/analysis.hpp"
#include "ahp/evaluation.hpp"

namespace ahp {

enum class ReportFormat { Json, Csv, Text };

inline ReportFormat parse_report_format(std::string_view s) {
  if (s == "json") return ReportFormat::Json;
  if (s == "csv") return ReportFormat::Csv;
  if (s == "text" || s == "text-summary") return ReportFormat::Text;
  fail(ErrorCode::UnsupportedFormat, "'" + std::string(s) + "'");
}

/// Significant digits used for every float in emitted reports.
inline constexpr int kReportDigits = 12;

/// Rounds to kReportDigits significant digits; locale-independent.
inline double round_report(double x) {
  if (!std::isfinite(x) || x == 0.0) return x;
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, kReportDigits);
  double out = x;
  std::from_chars(buf, res.ptr, out);
  return out;
}

inline std::string format_number(double x, int digits = kReportDigits) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, digits);
  return std::string(buf, res.ptr);
}

namespace detail {

inline Json number(double x) {
  if (!std::isfinite(x)) return nullptr;  // only the n <= 2 threshold is non-finite
  return round_report(x);
}

inline double number_from(const Json& j) {
  return j.is_null() ? std::numeric_limits<double>::infinity() : j.get<double>();
}

inline Json numbers(std::span<const double> xs) {
  Json arr = Json::array();
  for (double x : xs) arr.push_back(number(x));
  return arr;
}

inline std::vector<double> numbers_from(const Json& j) {
  std::vector<double> out;
  for (const auto& x : j) out.push_back(number_from(x));
  return out;
}

inline Json tfn_json(const Tfn& t) { return Json::array({number(t.l()), number(t.m()), number(t.u())}); }
inline Tfn tfn_from(const Json& j) { return Tfn(j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>()); }

inline Json verdict_json(const MatrixConsistency& mc) {
  Json j;
  j["subject"] = mc.subject;
  j["gci"] = number(mc.verdict.gci);
  j["n"] = mc.verdict.n;
  j["threshold"] = number(mc.verdict.threshold);
  j["consistent"] = mc.verdict.consistent;
  return j;
}

inline MatrixConsistency verdict_from(const Json& j) {
  return {j.at("subject").get<std::string>(),
          {j.at("gci").get<double>(), j.at("n").get<std::size_t>(), number_from(j.at("threshold")),
           j.at("consistent").get<bool>()}};
}

inline Json ranking_json(const Ranking& r) {
  Json j;
  j["method"] = to_string(r.method);
  j["cohort"] = to_string(r.cohort);
  j["entries"] = Json::array();
  for (const auto& e : r.entries) {
    Json ej;
    ej["rank"] = e.rank;
    ej["alternative"] = e.id;
    ej["score"] = number(e.score);
    ej["tied"] = e.tied;
    j["entries"].push_back(std::move(ej));
  }
  return j;
}

inline Ranking ranking_from(const Json& j) {
  Ranking r;
  r.method = parse_method(j.at("method").get<std::string>());
  r.cohort = parse_cohort(j.at("cohort").get<std::string>());
  for (const auto& ej : j.at("entries"))
    r.entries.push_back({ej.at("alternative").get<std::string>(), ej.at("score").get<double>(), ej.at("rank").get<int>(),
                         ej.at("tied").get<bool>()});
  return r;
}

}  // namespace detail

inline Json report_to_json(const EvaluationReport& r) {
  using namespace detail;
  Json j;
  j["schema_version"] = r.schema_version;
  j["settings"] = {{"method", to_string(r.method)},
                   {"cohort", to_string(r.cohort)},
                   {"criteria_rule", to_string(r.criteria_rule)},
                   {"indicator_rule", to_string(r.indicator_rule)},
                   {"missing_policy", to_string(r.missing_policy)},
                   {"strict_consistency", r.strict_consistency}};
  j["goal"] = r.goal;
  j["alternatives"] = r.alternatives;
  j["sub_criteria"] = r.sub_criteria;

  Json consistency;
  consistency["criteria"] = verdict_json(r.criteria_consistency);
  consistency["reference_criteria_gci"] = r.reference_criteria_gci ? number(*r.reference_criteria_gci) : Json(nullptr);
  consistency["local"] = Json::array();
  for (const auto& mc : r.local_consistency) consistency["local"].push_back(verdict_json(mc));
  j["consistency"] = std::move(consistency);

  j["methods"] = Json::array();
  for (const auto& m : r.methods) {
    Json mj;
    mj["method"] = to_string(m.method);
    mj["criteria_weights"] = numbers(m.criteria_weights);
    if (!m.criteria_fuzzy_weights.empty()) {
      mj["criteria_fuzzy_weights"] = Json::array();
      for (const auto& t : m.criteria_fuzzy_weights) mj["criteria_fuzzy_weights"].push_back(tfn_json(t));
    }
    mj["local"] = Json::array();
    for (const auto& lw : m.local) {
      Json lj;
      lj["sub_criterion"] = lw.sub_criterion;
      lj["weights"] = numbers(lw.weights);
      lj["excluded"] = lw.excluded;
      if (!lw.fuzzy.empty()) {
        lj["fuzzy_weights"] = Json::array();
        for (const auto& t : lw.fuzzy) lj["fuzzy_weights"].push_back(t ? tfn_json(*t) : Json(nullptr));
      }
      mj["local"].push_back(std::move(lj));
    }
    mj["scores"] = numbers(m.scores);
    mj["ranking"] = ranking_json(m.ranking);
    j["methods"].push_back(std::move(mj));
  }

  if (r.comparison) {
    j["comparison"] = {{"kendall_tau", number(r.comparison->tau)},
                       {"displaced", r.comparison->displaced},
                       {"max_displacement", r.comparison->max_displacement}};
  } else {
    j["comparison"] = nullptr;
  }

  j["reference_checks"] = Json::array();
  for (const auto& c : r.reference_checks) {
    Json cj;
    cj["method"] = to_string(c.method);
    cj["cohort"] = to_string(c.cohort);
    cj["source"] = c.source;
    cj["expected"] = c.expected;
    cj["observed"] = c.observed;
    cj["kendall_tau"] = number(c.tau);
    cj["exact_match"] = c.exact_match;
    cj["top_three_match"] = c.top_three_match;
    cj["bottom_two_match"] = c.bottom_two_match;
    j["reference_checks"].push_back(std::move(cj));
  }

  j["decisions"] = Json::array();
  for (const auto& d : r.decisions)
    j["decisions"].push_back({{"kind", d.kind}, {"subject", d.subject}, {"detail", d.detail}});
  return j;
}

inline EvaluationReport report_from_json(const Json& j) {
  using namespace detail;
  EvaluationReport r;
  try {
    r.schema_version = j.at("schema_version").get<std::string>();
    require(r.schema_version == "1", ErrorCode::UnsupportedFormat, "schema_version " + r.schema_version);
    const Json& s = j.at("settings");
    r.method = parse_method_selection(s.at("method").get<std::string>());
    r.cohort = parse_cohort(s.at("cohort").get<std::string>());
    r.criteria_rule = parse_rule_kind(s.at("criteria_rule").get<std::string>());
    r.indicator_rule = parse_rule_kind(s.at("indicator_rule").get<std::string>());
    r.missing_policy = parse_missing_policy(s.at("missing_policy").get<std::string>());
    r.strict_consistency = s.at("strict_consistency").get<bool>();
    r.goal = j.at("goal").get<std::string>();
    r.alternatives = j.at("alternatives").get<std::vector<std::string>>();
    r.sub_criteria = j.at("sub_criteria").get<std::vector<std::string>>();

    const Json& c = j.at("consistency");
    r.criteria_consistency = verdict_from(c.at("criteria"));
    if (!c.at("reference_criteria_gci").is_null()) r.reference_criteria_gci = c.at("reference_criteria_gci").get<double>();
    for (const auto& v : c.at("local")) r.local_consistency.push_back(verdict_from(v));

    for (const auto& mj : j.at("methods")) {
      MethodResult m;
      m.method = parse_method(mj.at("method").get<std::string>());
      m.criteria_weights = numbers_from(mj.at("criteria_weights"));
      if (mj.contains("criteria_fuzzy_weights"))
        for (const auto& t : mj.at("criteria_fuzzy_weights")) m.criteria_fuzzy_weights.push_back(tfn_from(t));
      for (const auto& lj : mj.at("local")) {
        LocalWeights lw;
        lw.sub_criterion = lj.at("sub_criterion").get<std::string>();
        lw.weights = numbers_from(lj.at("weights"));
        lw.excluded = lj.at("excluded").get<std::vector<std::string>>();
        if (lj.contains("fuzzy_weights"))
          for (const auto& t : lj.at("fuzzy_weights"))
            lw.fuzzy.push_back(t.is_null() ? std::optional<Tfn>() : std::optional<Tfn>(tfn_from(t)));
        m.local.push_back(std::move(lw));
      }
      m.scores = numbers_from(mj.at("scores"));
      m.ranking = ranking_from(mj.at("ranking"));
      r.methods.push_back(std::move(m));
    }

    if (!j.at("comparison").is_null()) {
      const Json& cj = j.at("comparison");
      r.comparison = MethodComparison{cj.at("kendall_tau").get<double>(),
                                      cj.at("displaced").get<std::vector<std::string>>(),
                                      cj.at("max_displacement").get<int>()};
    }
    for (const auto& cj : j.at("reference_checks")) {
      ReferenceCheck rc;
      rc.method = parse_method(cj.at("method").get<std::string>());
      rc.cohort = parse_cohort(cj.at("cohort").get<std::string>());
      rc.source = cj.at("source").get<std::string>();
      rc.expected = cj.at("expected").get<std::vector<std::string>>();
      rc.observed = cj.at("observed").get<std::vector<std::string>>();
      rc.tau = cj.at("kendall_tau").get<double>();
      rc.exact_match = cj.at("exact_match").get<bool>();
      rc.top_three_match = cj.at("top_three_match").get<bool>();
      rc.bottom_two_match = cj.at("bottom_two_match").get<bool>();
      r.reference_checks.push_back(std::move(rc));
    }
    for (const auto& d : j.at("decisions"))
      r.decisions.push_back(
          {d.at("kind").get<std::string>(), d.at("subject").get<std::string>(), d.at("detail").get<std::string>()});
  } catch (const Json::exception& e) {
    fail(ErrorCode::ParseError, std::string("report: ") + e.what());
  }
  return r;
}

inline std::string report_csv(const EvaluationReport& r) {
  std::ostringstream out;
  bool first = true;
  for (const auto& m : r.methods) {
    if (!first) out << "\n";
    first = false;
    out << "# method=" << to_string(m.method) << ",cohort=" << to_string(r.cohort) << "\n";
    out << "rank,alternative,score,tied\n";
    for (const auto& e : m.ranking.entries) {
      std::string id = e.id;
      if (id.find_first_of(",\"") != std::string::npos) {
        std::string quoted = "\"";
        for (char ch : id) quoted += (ch == '"') ? std::string("\"\"") : std::string(1, ch);
        id = quoted + "\"";
      }
      out << e.rank << "," << id << "," << format_number(e.score) << "," << (e.tied ? "true" : "false") << "\n";
    }
  }
  return out.str();
}

inline std::string cohort_label(Cohort c) {
  switch (c) {
    case Cohort::Ages15To34: return "15-34 ages";
    case Cohort::Ages35To59: return "35-59 ages";
    case Cohort::None: return "all";
  }
  return "all";
}

inline std::string report_text(const EvaluationReport& r) {
  std::ostringstream out;
  out << "Goal: " << r.goal << "\n";
  out << "Cohort: " << cohort_label(r.cohort) << "   criteria rule: " << to_string(r.criteria_rule)
      << "   indicator rule: " << to_string(r.indicator_rule) << "\n";
  const auto& cv = r.criteria_consistency.verdict;
  out << "Criteria matrix GCI: " << format_number(cv.gci, 6) << " (n = " << cv.n << ", threshold "
      << (std::isfinite(cv.threshold) ? format_number(cv.threshold, 3) : std::string("none")) << ", "
      << (cv.consistent ? "consistent" : "INCONSISTENT") << ")";
  if (r.reference_criteria_gci) out << "   reference GCI: " << format_number(*r.reference_criteria_gci, 6);
  out << "\n";
  for (const auto& m : r.methods) {
    out << "\n" << (m.method == Method::Ahp ? "AHP method" : "Fuzzy AHP method") << ", " << cohort_label(r.cohort)
        << ":\n";
    for (const auto& e : m.ranking.entries) {
      char line[160];
      std::snprintf(line, sizeof line, "  %2d. %-24s %s%s\n", e.rank, e.id.c_str(), format_number(e.score, 6).c_str(),
                    e.tied ? "  (tied)" : "");
      out << line;
    }
  }
  if (r.comparison) {
    out << "\nAHP vs Fuzzy AHP: kendall tau " << format_number(r.comparison->tau, 6) << ", max displacement "
        << r.comparison->max_displacement;
    if (!r.comparison->displaced.empty()) out << ", displaced: " << detail::join(r.comparison->displaced);
    out << "\n";
  }
  for (const auto& c : r.reference_checks) {
    out << "Reference " << to_string(c.method) << " " << cohort_label(c.cohort) << ": "
        << (c.exact_match ? "exact match" : "deviates") << " (tau " << format_number(c.tau, 6) << ")\n";
  }
  std::size_t warnings = 0;
  for (const auto& d : r.decisions) warnings += d.kind == "consistency_warning";
  out << "\n" << r.decisions.size() << " logged decision(s), " << warnings << " consistency warning(s)\n";
  return out.str();
}

inline Json sweep_to_json(const SweepReport& sweep, const std::vector<std::string>& sub_criteria) {
  using namespace detail;
  const auto label = [&](std::size_t i) { return i < sub_criteria.size() ? sub_criteria[i] : std::to_string(i + 1); };
  Json j;
  j["schema_version"] = "1";
  j["baseline"] = ranking_json(sweep.baseline);
  j["perturbations"] = sweep.entries.size();
  j["changed"] = sweep.changed_count();
  j["rank_changes"] = Json::object();
  for (const auto& e : sweep.baseline.entries) j["rank_changes"][e.id] = sweep.rank_changes.at(e.id);
  j["entries"] = Json::array();
  for (const auto& e : sweep.entries) {
    Json ej;
    ej["row"] = label(e.i);
    ej["column"] = label(e.j);
    ej["factor"] = number(e.factor);
    ej["gci"] = number(e.consistency.gci);
    ej["threshold"] = number(e.consistency.threshold);
    ej["consistent"] = e.consistency.consistent;
    ej["changed"] = e.changed;
    ej["order"] = e.order;
    ej["reversals"] = Json::array();
    for (const auto& [a, b] : e.reversals) ej["reversals"].push_back(Json::array({a, b}));
    j["entries"].push_back(std::move(ej));
  }
  return j;
}

inline std::string sweep_text(const SweepReport& sweep, const std::vector<std::string>& sub_criteria) {
  std::ostringstream out;
  out << "Baseline: " << detail::join(sweep.baseline.order()) << "\n";
  out << sweep.changed_count() << " of " << sweep.entries.size() << " single-judgment perturbations change the ranking\n";
  for (const auto& e : sweep.baseline.entries)
    out << "  " << e.id << ": moved in " << sweep.rank_changes.at(e.id) << "\n";
  for (const auto& e : sweep.entries) {
    if (!e.changed) continue;
    const auto label = [&](std::size_t i) { return i < sub_criteria.size() ? sub_criteria[i] : std::to_string(i + 1); };
    out << "  a(" << label(e.i) << "," << label(e.j) << ") x " << format_number(e.factor, 4) << ": "
        << detail::join(e.order) << "  (GCI " << format_number(e.consistency.gci, 4) << ")\n";
  }
  return out.str();
}

/// Serializes `r`; JSON output is byte-stable for identical reports.
inline std::string emit_report(const EvaluationReport& r, ReportFormat format) {
  switch (format) {
    case ReportFormat::Json: return report_to_json(r).dump(2) + "\n";
    case ReportFormat::Csv: return report_csv(r);
    case ReportFormat::Text: return report_text(r);
  }
  fail(ErrorCode::UnsupportedFormat, "unknown format");
}

inline std::string emit_report(const EvaluationReport& r, std::string_view format) {
  return emit_report(r, parse_report_format(format));
}

}  // namespace ahp
