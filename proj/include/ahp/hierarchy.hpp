#pragma once

// Goal -> criteria -> sub-criteria -> alternatives hierarchy and the
// indicator table that feeds the alternative-level comparisons.

#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "ahp/error.hpp"
#include "json.hpp"

namespace ahp {

using Json = nlohmann::ordered_json;

enum class Direction { HigherIsBetter, LowerIsBetter };
enum class Unit { Percent, Per100kAdults, Other };
enum class Cohort { Ages15To34, Ages35To59, None };
enum class Method { Ahp, Fahp };

inline std::string_view to_string(Direction d) {
  return d == Direction::HigherIsBetter ? "higher_is_better" : "lower_is_better";
}
inline std::string_view to_string(Unit u) {
  switch (u) {
    case Unit::Percent: return "percent";
    case Unit::Per100kAdults: return "per_100k_adults";
    case Unit::Other: return "other";
  }
  return "other";
}
inline std::string_view to_string(Cohort c) {
  switch (c) {
    case Cohort::Ages15To34: return "ages_15_34";
    case Cohort::Ages35To59: return "ages_35_59";
    case Cohort::None: return "none";
  }
  return "none";
}
inline std::string_view to_string(Method m) { return m == Method::Ahp ? "ahp" : "fahp"; }

inline Direction parse_direction(std::string_view s) {
  if (s == "higher_is_better") return Direction::HigherIsBetter;
  if (s == "lower_is_better") return Direction::LowerIsBetter;
  fail(ErrorCode::InvalidConfig, "unknown direction '" + std::string(s) + "'");
}
inline Unit parse_unit(std::string_view s) {
  if (s == "percent") return Unit::Percent;
  if (s == "per_100k_adults") return Unit::Per100kAdults;
  if (s == "other") return Unit::Other;
  fail(ErrorCode::InvalidConfig, "unknown unit '" + std::string(s) + "'");
}
inline Cohort parse_cohort(std::string_view s) {
  if (s == "ages_15_34") return Cohort::Ages15To34;
  if (s == "ages_35_59") return Cohort::Ages35To59;
  if (s == "none") return Cohort::None;
  fail(ErrorCode::InvalidConfig, "unknown cohort '" + std::string(s) + "'");
}
inline Method parse_method(std::string_view s) {
  if (s == "ahp") return Method::Ahp;
  if (s == "fahp") return Method::Fahp;
  fail(ErrorCode::InvalidConfig, "unknown method '" + std::string(s) + "'");
}

struct SubCriterion {
  std::string id;
  std::string description;
  int group_importance = 1;
  int final_importance = 1;
  Direction direction = Direction::HigherIsBetter;
  Unit unit = Unit::Percent;

  bool operator==(const SubCriterion&) const = default;
};

struct Criterion {
  std::string id;
  std::string description;
  int importance = 1;  // higher = more important
  std::vector<SubCriterion> sub_criteria;

  bool operator==(const Criterion&) const = default;
};

/// Externally published ordering (best first) to check a run against.
struct ReferenceRanking {
  Method method = Method::Ahp;
  Cohort cohort = Cohort::None;
  std::vector<std::string> order;
  std::string source;

  bool operator==(const ReferenceRanking&) const = default;
};

struct Hierarchy {
  std::string goal;
  std::vector<Criterion> criteria;
  std::vector<std::string> alternatives;
  std::optional<std::string> context_notes;
  std::vector<ReferenceRanking> reference_rankings;
  std::optional<double> reference_criteria_gci;  // externally reported GCI of the criteria matrix

  /// Sub-criteria in declaration order across all criteria.
  std::vector<SubCriterion> flattened() const {
    std::vector<SubCriterion> out;
    for (const auto& c : criteria) out.insert(out.end(), c.sub_criteria.begin(), c.sub_criteria.end());
    return out;
  }

  std::vector<int> final_importances() const {
    std::vector<int> out;
    for (const auto& c : criteria)
      for (const auto& s : c.sub_criteria) out.push_back(s.final_importance);
    return out;
  }

  bool operator==(const Hierarchy&) const = default;
};

namespace detail {

inline const Json& member(const Json& node, const char* key, const std::string& where) {
  require(node.is_object() && node.contains(key), ErrorCode::InvalidConfig, where + ": missing key '" + key + "'");
  return node.at(key);
}

inline std::string text(const Json& node, const char* key, const std::string& where) {
  const Json& v = member(node, key, where);
  require(v.is_string(), ErrorCode::InvalidConfig, where + "." + key + " must be a string");
  return v.get<std::string>();
}

inline int positive_int(const Json& node, const char* key, const std::string& where) {
  const Json& v = member(node, key, where);
  require(v.is_number_integer(), ErrorCode::InvalidConfig, where + "." + key + " must be an integer");
  const auto value = v.get<long long>();
  require(value >= 1, ErrorCode::NonPositiveImportance, where + "." + key + " must be >= 1");
  return static_cast<int>(value);
}

}  // namespace detail

/// Builds a Hierarchy from its key-value document form, enforcing every
/// structural invariant including final = criterion x group importance.
inline Hierarchy load_hierarchy(const Json& doc) {
  using detail::member;
  using detail::positive_int;
  using detail::text;

  Hierarchy h;
  h.goal = text(doc, "goal", "hierarchy");
  if (doc.contains("context_notes")) h.context_notes = text(doc, "context_notes", "hierarchy");

  const Json& criteria = member(doc, "criteria", "hierarchy");
  require(criteria.is_array() && !criteria.empty(), ErrorCode::EmptyLevel, "hierarchy has no criteria");

  std::set<std::string> seen_criteria;
  std::set<std::string> seen_sub;
  for (std::size_t ci = 0; ci < criteria.size(); ++ci) {
    const std::string where = "criteria[" + std::to_string(ci) + "]";
    const Json& cnode = criteria[ci];
    Criterion c;
    c.id = text(cnode, "id", where);
    if (cnode.contains("description")) c.description = text(cnode, "description", where);
    c.importance = positive_int(cnode, "importance", where);
    require(seen_criteria.insert(c.id).second, ErrorCode::DuplicateId, "criterion id '" + c.id + "'");

    const Json& subs = member(cnode, "sub_criteria", where);
    require(subs.is_array() && !subs.empty(), ErrorCode::EmptyLevel, "criterion '" + c.id + "' has no sub-criteria");
    for (std::size_t si = 0; si < subs.size(); ++si) {
      const std::string swhere = where + ".sub_criteria[" + std::to_string(si) + "]";
      const Json& snode = subs[si];
      SubCriterion s;
      s.id = text(snode, "id", swhere);
      if (snode.contains("description")) s.description = text(snode, "description", swhere);
      s.group_importance = positive_int(snode, "group_importance", swhere);
      s.final_importance = positive_int(snode, "final_importance", swhere);
      if (snode.contains("direction")) s.direction = parse_direction(text(snode, "direction", swhere));
      if (snode.contains("unit")) s.unit = parse_unit(text(snode, "unit", swhere));
      require(seen_sub.insert(s.id).second, ErrorCode::DuplicateId, "sub-criterion id '" + s.id + "'");
      require(s.final_importance == c.importance * s.group_importance, ErrorCode::ImportanceProductMismatch,
              "sub-criterion '" + s.id + "': final_importance " + std::to_string(s.final_importance) + " != " +
                  std::to_string(c.importance) + " x " + std::to_string(s.group_importance));
      c.sub_criteria.push_back(std::move(s));
    }
    h.criteria.push_back(std::move(c));
  }

  const Json& alternatives = member(doc, "alternatives", "hierarchy");
  require(alternatives.is_array(), ErrorCode::InvalidConfig, "alternatives must be a list");
  std::set<std::string> seen_alt;
  for (const Json& a : alternatives) {
    require(a.is_string(), ErrorCode::InvalidConfig, "alternative ids must be strings");
    const auto id = a.get<std::string>();
    require(seen_alt.insert(id).second, ErrorCode::DuplicateId, "alternative id '" + id + "'");
    h.alternatives.push_back(id);
  }
  require(h.alternatives.size() >= 2, ErrorCode::EmptyLevel, "hierarchy needs at least two alternatives");

  if (doc.contains("reference_criteria_gci")) {
    const Json& g = doc.at("reference_criteria_gci");
    require(g.is_number() && g.get<double>() >= 0.0, ErrorCode::InvalidConfig,
            "reference_criteria_gci must be a non-negative number");
    h.reference_criteria_gci = g.get<double>();
  }

  if (doc.contains("reference_rankings")) {
    const Json& refs = doc.at("reference_rankings");
    require(refs.is_array(), ErrorCode::InvalidConfig, "reference_rankings must be a list");
    for (std::size_t ri = 0; ri < refs.size(); ++ri) {
      const std::string where = "reference_rankings[" + std::to_string(ri) + "]";
      ReferenceRanking r;
      r.method = parse_method(text(refs[ri], "method", where));
      r.cohort = parse_cohort(text(refs[ri], "cohort", where));
      if (refs[ri].contains("source")) r.source = text(refs[ri], "source", where);
      std::set<std::string> listed;
      for (const Json& id : member(refs[ri], "order", where)) {
        require(id.is_string() && seen_alt.count(id.get<std::string>()), ErrorCode::UnknownAlternative,
                where + ": " + id.dump());
        require(listed.insert(id.get<std::string>()).second, ErrorCode::DuplicateId, where + ": " + id.dump());
        r.order.push_back(id.get<std::string>());
      }
      require(r.order.size() == h.alternatives.size(), ErrorCode::AlternativeSetMismatch,
              where + " must list every alternative once");
      h.reference_rankings.push_back(std::move(r));
    }
  }
  return h;
}

inline Json hierarchy_to_json(const Hierarchy& h) {
  Json doc;
  doc["goal"] = h.goal;
  if (h.context_notes) doc["context_notes"] = *h.context_notes;
  doc["criteria"] = Json::array();
  for (const auto& c : h.criteria) {
    Json cnode;
    cnode["id"] = c.id;
    if (!c.description.empty()) cnode["description"] = c.description;
    cnode["importance"] = c.importance;
    cnode["sub_criteria"] = Json::array();
    for (const auto& s : c.sub_criteria) {
      Json snode;
      snode["id"] = s.id;
      if (!s.description.empty()) snode["description"] = s.description;
      snode["group_importance"] = s.group_importance;
      snode["final_importance"] = s.final_importance;
      snode["direction"] = to_string(s.direction);
      snode["unit"] = to_string(s.unit);
      cnode["sub_criteria"].push_back(std::move(snode));
    }
    doc["criteria"].push_back(std::move(cnode));
  }
  doc["alternatives"] = h.alternatives;
  if (h.reference_criteria_gci) doc["reference_criteria_gci"] = *h.reference_criteria_gci;
  if (!h.reference_rankings.empty()) {
    doc["reference_rankings"] = Json::array();
    for (const auto& r : h.reference_rankings) {
      Json rnode;
      rnode["method"] = to_string(r.method);
      rnode["cohort"] = to_string(r.cohort);
      rnode["order"] = r.order;
      if (!r.source.empty()) rnode["source"] = r.source;
      doc["reference_rankings"].push_back(std::move(rnode));
    }
  }
  return doc;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorCode::IoError, "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline Hierarchy load_hierarchy_file(const std::string& path) {
  Json doc;
  try {
    doc = Json::parse(read_file(path));
  } catch (const Json::parse_error& e) {
    fail(ErrorCode::ParseError, path + ": " + e.what());
  }
  try {
    return load_hierarchy(doc);
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + std::string(e.what()));
  }
}

/// Indicator values per (alternative, sub-criterion), both axes in hierarchy
/// order. Missing cells stay empty; nothing is imputed here.
struct IndicatorTable {
  std::vector<std::string> alternatives;
  std::vector<std::string> sub_criteria;
  std::vector<Unit> units;
  Cohort cohort = Cohort::None;
  std::vector<std::vector<std::optional<double>>> cells;  // [alternative][sub-criterion]

  std::vector<std::optional<double>> column(std::size_t k) const {
    std::vector<std::optional<double>> out;
    out.reserve(cells.size());
    for (const auto& row : cells) out.push_back(row[k]);
    return out;
  }

  bool operator==(const IndicatorTable&) const = default;
};

namespace detail {

inline std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

/// Splits one CSV record; double-quoted fields may contain commas and "" escapes.
inline std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        current += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        current += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.push_back(trim(current));
      current.clear();
    } else {
      current += ch;
    }
  }
  fields.push_back(trim(current));
  return fields;
}

inline bool is_missing_token(const std::string& s) { return s.empty() || s == "NA" || s == "na" || s == "NaN"; }

inline std::optional<double> parse_number(const std::string& s) {
  double value = 0.0;
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  if (!s.empty() && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) return std::nullopt;
  return value;
}

}  // namespace detail

/// Parses a comma-separated indicator table: header `alternative,<ids...>`,
/// one row per alternative, dot decimal separator. Empty or NA cells are
/// recorded as missing. `source` prefixes error messages.
inline IndicatorTable load_indicators(std::string_view csv, const Hierarchy& hierarchy, Cohort cohort,
                                      const std::string& source = "<indicators>") {
  const std::vector<SubCriterion> subs = hierarchy.flattened();
  IndicatorTable table;
  table.alternatives = hierarchy.alternatives;
  table.cohort = cohort;
  for (const auto& s : subs) {
    table.sub_criteria.push_back(s.id);
    table.units.push_back(s.unit);
  }
  table.cells.assign(hierarchy.alternatives.size(), std::vector<std::optional<double>>(subs.size()));

  std::vector<std::string> lines;
  {
    std::string line;
    std::istringstream in{std::string(csv)};
    while (std::getline(in, line)) lines.push_back(line);
  }
  if (!lines.empty() && lines[0].starts_with("\xEF\xBB\xBF")) lines[0].erase(0, 3);

  std::size_t header_line = 0;
  while (header_line < lines.size() && detail::trim(lines[header_line]).empty()) ++header_line;
  require(header_line < lines.size(), ErrorCode::ParseError, source + ": empty indicator file");

  const auto header = detail::split_csv_line(lines[header_line]);
  const std::string at_header = source + ":" + std::to_string(header_line + 1);
  require(!header.empty() && header[0] == "alternative", ErrorCode::ParseError,
          at_header + ": first column must be 'alternative'");

  // column position -> sub-criterion index
  std::vector<std::size_t> column_to_sub(header.size(), 0);
  std::vector<bool> present(subs.size(), false);
  for (std::size_t c = 1; c < header.size(); ++c) {
    std::size_t k = 0;
    while (k < subs.size() && subs[k].id != header[c]) ++k;
    require(k < subs.size(), ErrorCode::UnknownColumn, at_header + ": column '" + header[c] + "'");
    require(!present[k], ErrorCode::DuplicateId, at_header + ": column '" + header[c] + "' repeated");
    present[k] = true;
    column_to_sub[c] = k;
  }
  for (std::size_t k = 0; k < subs.size(); ++k)
    require(present[k], ErrorCode::MissingColumn, at_header + ": no column for '" + subs[k].id + "'");

  std::vector<bool> row_seen(hierarchy.alternatives.size(), false);
  for (std::size_t li = header_line + 1; li < lines.size(); ++li) {
    if (detail::trim(lines[li]).empty()) continue;
    const std::string at = source + ":" + std::to_string(li + 1);
    const auto fields = detail::split_csv_line(lines[li]);
    require(fields.size() == header.size(), ErrorCode::ParseError,
            at + ": expected " + std::to_string(header.size()) + " fields, got " + std::to_string(fields.size()));
    std::size_t a = 0;
    while (a < hierarchy.alternatives.size() && hierarchy.alternatives[a] != fields[0]) ++a;
    require(a < hierarchy.alternatives.size(), ErrorCode::UnknownAlternative, at + ": '" + fields[0] + "'");
    require(!row_seen[a], ErrorCode::DuplicateId, at + ": alternative '" + fields[0] + "' repeated");
    row_seen[a] = true;
    for (std::size_t c = 1; c < fields.size(); ++c) {
      const std::size_t k = column_to_sub[c];
      if (detail::is_missing_token(fields[c])) continue;
      const auto value = detail::parse_number(fields[c]);
      require(value.has_value(), ErrorCode::ParseError, at + ": '" + fields[c] + "' is not a number");
      require(*value >= 0.0, ErrorCode::NegativeValue, at + ": " + subs[k].id + " = " + fields[c]);
      require(subs[k].unit != Unit::Percent || *value <= 100.0, ErrorCode::PercentOutOfRange,
              at + ": " + subs[k].id + " = " + fields[c]);
      table.cells[a][k] = *value;
    }
  }
  for (std::size_t a = 0; a < row_seen.size(); ++a)
    require(row_seen[a], ErrorCode::MissingAlternative, source + ": no row for '" + hierarchy.alternatives[a] + "'");
  return table;
}

inline IndicatorTable load_indicators_file(const std::string& path, const Hierarchy& hierarchy, Cohort cohort) {
  return load_indicators(read_file(path), hierarchy, cohort, path);
}

}  // namespace ahp
