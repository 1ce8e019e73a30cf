#include <gtest/gtest.h>

#include "ahp/hierarchy.hpp"

namespace ahp {
namespace {

const std::string kData = AHP_DATA_DIR;

template <typename F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an ahp::Error";
  return ErrorCode::InvariantViolation;
}

Json minimal_doc() {
  return Json::parse(R"({
    "goal": "g",
    "criteria": [{"id": "c", "importance": 1,
                  "sub_criteria": [{"id": "s", "group_importance": 1, "final_importance": 1}]}],
    "alternatives": ["A", "B"]
  })");
}

TEST(LoadHierarchy, BundledConfig) {
  const Hierarchy h = load_hierarchy_file(kData + "/hierarchy_financial_digital_inclusion.json");
  EXPECT_EQ(h.criteria.size(), 2u);
  EXPECT_EQ(h.flattened().size(), 11u);
  EXPECT_EQ(h.final_importances(), (std::vector<int>{2, 2, 4, 4, 4, 1, 1, 2, 3, 4, 5}));
  EXPECT_EQ(h.alternatives.size(), 5u);
  EXPECT_EQ(h.criteria[0].importance, 2);
  EXPECT_EQ(h.flattened()[5].unit, Unit::Per100kAdults);
  EXPECT_EQ(h.reference_rankings.size(), 4u);
  ASSERT_TRUE(h.reference_criteria_gci.has_value());
  EXPECT_DOUBLE_EQ(*h.reference_criteria_gci, 0.1189);
  ASSERT_TRUE(h.context_notes.has_value());
}

TEST(LoadHierarchy, MinimalValid) {
  const Hierarchy h = load_hierarchy(minimal_doc());
  EXPECT_EQ(h.flattened().size(), 1u);
  EXPECT_EQ(h.flattened()[0].final_importance, 1);
  EXPECT_EQ(h.flattened()[0].direction, Direction::HigherIsBetter);
}

TEST(LoadHierarchy, ImportanceProductMismatch) {
  Json doc = Json::parse(read_file(kData + "/hierarchy_financial_digital_inclusion.json"));
  doc["criteria"][0]["sub_criteria"][2]["final_importance"] = 5;  // i3: 2 x 2 = 4
  EXPECT_EQ(code_of([&] { load_hierarchy(doc); }), ErrorCode::ImportanceProductMismatch);
}

TEST(LoadHierarchy, StructuralErrors) {
  Json dup = minimal_doc();
  dup["alternatives"] = Json::array({"A", "A"});
  EXPECT_EQ(code_of([&] { load_hierarchy(dup); }), ErrorCode::DuplicateId);

  Json dup_sub = minimal_doc();
  dup_sub["criteria"].push_back(dup_sub["criteria"][0]);
  dup_sub["criteria"][1]["id"] = "c2";
  EXPECT_EQ(code_of([&] { load_hierarchy(dup_sub); }), ErrorCode::DuplicateId);

  Json no_sub = minimal_doc();
  no_sub["criteria"][0]["sub_criteria"] = Json::array();
  EXPECT_EQ(code_of([&] { load_hierarchy(no_sub); }), ErrorCode::EmptyLevel);

  Json no_crit = minimal_doc();
  no_crit["criteria"] = Json::array();
  EXPECT_EQ(code_of([&] { load_hierarchy(no_crit); }), ErrorCode::EmptyLevel);

  Json one_alt = minimal_doc();
  one_alt["alternatives"] = Json::array({"A"});
  EXPECT_EQ(code_of([&] { load_hierarchy(one_alt); }), ErrorCode::EmptyLevel);

  Json zero = minimal_doc();
  zero["criteria"][0]["importance"] = 0;
  EXPECT_EQ(code_of([&] { load_hierarchy(zero); }), ErrorCode::NonPositiveImportance);

  Json bad_dir = minimal_doc();
  bad_dir["criteria"][0]["sub_criteria"][0]["direction"] = "sideways";
  EXPECT_EQ(code_of([&] { load_hierarchy(bad_dir); }), ErrorCode::InvalidConfig);
}

TEST(LoadHierarchy, SerializeRoundTripIsIdentity) {
  const Hierarchy h = load_hierarchy_file(kData + "/hierarchy_financial_digital_inclusion.json");
  EXPECT_EQ(load_hierarchy(hierarchy_to_json(h)), h);
  const Hierarchy m = load_hierarchy(minimal_doc());
  EXPECT_EQ(load_hierarchy(hierarchy_to_json(m)), m);
}

TEST(LoadHierarchy, MissingFileNamesPath) {
  try {
    load_hierarchy_file("/nonexistent/h.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IoError);
    EXPECT_NE(std::string(e.what()).find("/nonexistent/h.json"), std::string::npos);
  }
}

class IndicatorLoading : public ::testing::Test {
 protected:
  Hierarchy h = load_hierarchy_file(kData + "/hierarchy_financial_digital_inclusion.json");
  std::string csv = read_file(kData + "/indicators_2017_ages_15_34.csv");
};

TEST_F(IndicatorLoading, BundledTable) {
  const IndicatorTable t = load_indicators(csv, h, Cohort::Ages15To34);
  EXPECT_EQ(t.cohort, Cohort::Ages15To34);
  ASSERT_EQ(t.cells.size(), 5u);
  for (const auto& row : t.cells) {
    ASSERT_EQ(row.size(), 11u);
    for (const auto& cell : row) EXPECT_TRUE(cell.has_value());
  }
  EXPECT_EQ(t.alternatives[1], "Croatia");
}

TEST_F(IndicatorLoading, NegativeValue) {
  std::string bad = csv;
  bad.replace(bad.find("Bulgaria,95"), 11, "Bulgaria,-3");
  EXPECT_EQ(code_of([&] { load_indicators(bad, h, Cohort::Ages15To34); }), ErrorCode::NegativeValue);
}

TEST_F(IndicatorLoading, PercentOutOfRangeButCountsMayExceed100) {
  std::string bad = csv;
  bad.replace(bad.find("Bulgaria,95"), 11, "Bulgaria,101");
  EXPECT_EQ(code_of([&] { load_indicators(bad, h, Cohort::Ages15To34); }), ErrorCode::PercentOutOfRange);
  // i6 (ATMs per 100k) is a count and already exceeds 100 for Croatia.
  EXPECT_NO_THROW(load_indicators(csv, h, Cohort::Ages15To34));
}

TEST_F(IndicatorLoading, ColumnChecks) {
  // Drop i7 entirely: missing required column.
  std::string missing;
  std::istringstream in(csv);
  for (std::string line; std::getline(in, line);) {
    auto fields = detail::split_csv_line(line);
    fields.erase(fields.begin() + 7);
    for (std::size_t i = 0; i < fields.size(); ++i) missing += (i ? "," : "") + fields[i];
    missing += "\n";
  }
  EXPECT_EQ(code_of([&] { load_indicators(missing, h, Cohort::Ages15To34); }), ErrorCode::MissingColumn);

  std::string extra = csv;
  extra.replace(extra.find("i11"), 3, "i12");
  EXPECT_EQ(code_of([&] { load_indicators(extra, h, Cohort::Ages15To34); }), ErrorCode::UnknownColumn);
}

TEST_F(IndicatorLoading, RowChecks) {
  std::string unknown = csv;
  unknown.replace(unknown.find("Romania"), 7, "Hungary");
  EXPECT_EQ(code_of([&] { load_indicators(unknown, h, Cohort::Ages15To34); }), ErrorCode::UnknownAlternative);

  std::string short_table = csv.substr(0, csv.find("Romania"));
  EXPECT_EQ(code_of([&] { load_indicators(short_table, h, Cohort::Ages15To34); }), ErrorCode::MissingAlternative);

  std::string garbage = csv;
  garbage.replace(garbage.find("Bulgaria,95"), 11, "Bulgaria,x5");
  try {
    load_indicators(garbage, h, Cohort::Ages15To34, "table.csv");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParseError);
    EXPECT_NE(std::string(e.what()).find("table.csv:2"), std::string::npos);
  }
}

TEST_F(IndicatorLoading, MissingCellsAreFlaggedNotZeroed) {
  std::string gap = csv;
  gap.replace(gap.find("Bulgaria,95"), 11, "Bulgaria,NA");
  const IndicatorTable t = load_indicators(gap, h, Cohort::Ages15To34);
  EXPECT_FALSE(t.cells[0][0].has_value());
  EXPECT_TRUE(t.cells[1][0].has_value());

  std::string empty_cell = csv;
  empty_cell.replace(empty_cell.find("Bulgaria,95"), 11, "Bulgaria,");
  EXPECT_FALSE(load_indicators(empty_cell, h, Cohort::Ages15To34).cells[0][0].has_value());
}

TEST(CsvSplit, QuotedFields) {
  EXPECT_EQ(detail::split_csv_line(R"("Korea, Rep.",1,"a ""b""")"),
            (std::vector<std::string>{"Korea, Rep.", "1", "a \"b\""}));
}

}  // namespace
}  // namespace ahp
