// Tests for the body-spec JSON reader/writer and the report documents.

#include <gtest/gtest.h>

#include <algorithm>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "starcalc/json_io.hpp"
#include "starcalc/report.hpp"

namespace sc = starcalc;

namespace {

std::string wrapped_document() {
  return R"({
  "version": 1,
  "dim": 2,
  "resolution": 1024,
  "phis": {
    "three_halves": {"type": "power", "q": 1.5}
  },
  "body": {
    "type": "orlicz_sum",
    "phi": "three_halves",
    "k": 1.0,
    "ks": [1.0, 1.0],
    "bodies": [
      {"type": "lp_ball", "p": 1.0, "scale": 1.0},
      {"type": "radial_trig_poly", "a0": 1.0, "cos": [0, 0, 0.3], "sin": []}
    ]
  }
})";
}

}  // namespace

TEST(FormatDouble, SeventeenDigitRoundTrip) {
  EXPECT_EQ(sc::format_double(3.141592653589793), "3.1415926535897931");
  EXPECT_EQ(sc::format_double(2.0), "2");
  EXPECT_EQ(sc::format_double(-0.5), "-0.5");
  EXPECT_THROW(sc::format_double(std::numeric_limits<double>::infinity()), sc::IoError);
}

TEST(SerializeJson, CanonicalShape) {
  const sc::Json j{{"b", 1.5}, {"a", sc::Json::array({1.0, 2.0})}};
  // Keys are emitted sorted, arrays one element per line, trailing newline.
  EXPECT_EQ(sc::serialize_json(j),
            "{\n  \"a\": [\n    1,\n    2\n  ],\n  \"b\": 1.5\n}\n");
}

TEST(ParseSpec, BareBallTree) {
  const auto doc = sc::parse_spec(R"({"type": "ball", "r": 2.0})");
  EXPECT_EQ(doc.dim, 2);
  EXPECT_FALSE(doc.has_resolution);
  EXPECT_NEAR(doc.body.radial(sc::Direction::from_angle(0.1)), 2.0, 1e-15);
}

TEST(ParseSpec, LeafDimensionOverride) {
  const auto doc = sc::parse_spec(R"({"type": "ball", "r": 1.0, "dim": 3})");
  EXPECT_EQ(doc.dim, 3);
  EXPECT_EQ(doc.body.dim(), 3);
}

TEST(ParseSpec, NegativeRadiusIsASchemaError) {
  try {
    sc::parse_spec(R"({"type": "ball", "r": -1.0})");
    FAIL() << "expected SchemaError";
  } catch (const sc::SchemaError& e) {
    EXPECT_EQ(e.path(), "/r");
    EXPECT_NE(std::string(e.what()).find("r must be positive"), std::string::npos);
  }
}

TEST(ParseSpec, UnknownTagIsASchemaError) {
  try {
    sc::parse_spec(R"({"type": "cube", "side": 1.0})");
    FAIL() << "expected SchemaError";
  } catch (const sc::SchemaError& e) {
    EXPECT_NE(std::string(e.what()).find("unknown type tag \"cube\""), std::string::npos);
  }
}

TEST(ParseSpec, MalformedTextIsASchemaError) {
  EXPECT_THROW(sc::parse_spec("{not json"), sc::SchemaError);
  EXPECT_THROW(sc::parse_spec(R"(["array", "not", "object"])"), sc::SchemaError);
}

TEST(ParseSpec, WrappedDocumentBuildsTheSum) {
  const auto doc = sc::parse_spec(wrapped_document());
  EXPECT_EQ(doc.version, 1);
  EXPECT_EQ(doc.dim, 2);
  EXPECT_TRUE(doc.has_resolution);
  EXPECT_EQ(doc.resolution, 1024);
  EXPECT_EQ(doc.body.dim(), 2);
  EXPECT_EQ(sc::body_tree_depth(doc.normalized.at("body")), 2);
  // The built sum solves its defining equation.
  const auto rule = sc::SphereRule::circle(256);
  EXPECT_GT(sc::volume(doc.body, rule), 0.0);
}

TEST(ParseSpec, RoundTripIsByteStable) {
  const auto doc = sc::parse_spec(wrapped_document());
  const std::string first = sc::serialize_spec(doc);
  const auto reparsed = sc::parse_spec(first);
  const std::string second = sc::serialize_spec(reparsed);
  EXPECT_EQ(first, second);
}

TEST(ParseSpec, UnknownGaugeNameIsASchemaError) {
  const std::string text = R"({
    "body": {
      "type": "orlicz_sum",
      "phi": "missing_name",
      "bodies": [{"type": "ball", "r": 1.0}, {"type": "ball", "r": 2.0}]
    }
  })";
  try {
    sc::parse_spec(text);
    FAIL() << "expected SchemaError";
  } catch (const sc::SchemaError& e) {
    EXPECT_NE(std::string(e.what()).find("unknown gauge name"), std::string::npos);
  }
}

TEST(ParseSpec, GaugeArityMustMatchSummands) {
  const std::string text = R"({
    "body": {
      "type": "orlicz_sum",
      "phi": {"type": "sum", "terms": [
        {"phi": {"type": "power", "q": 2.0}},
        {"phi": {"type": "power", "q": 2.0}},
        {"phi": {"type": "power", "q": 2.0}}
      ]},
      "bodies": [{"type": "ball", "r": 1.0}, {"type": "ball", "r": 2.0}]
    }
  })";
  try {
    sc::parse_spec(text);
    FAIL() << "expected SchemaError";
  } catch (const sc::SchemaError& e) {
    EXPECT_NE(std::string(e.what()).find("does not match"), std::string::npos);
  }
}

TEST(ParseSpec, SumGaugeRejectedWhereScalarExpected) {
  EXPECT_THROW(sc::parse_phi1(R"({"type": "sum", "terms": []})"), sc::SchemaError);
}

TEST(ParseSpec, DocumentDimensionMismatchIsDetected) {
  const std::string text = R"({
    "dim": 3,
    "body": {"type": "radial_trig_poly", "a0": 1.0, "cos": [0.2], "sin": []}
  })";
  try {
    sc::parse_spec(text);
    FAIL() << "expected SchemaError";
  } catch (const sc::SchemaError& e) {
    EXPECT_NE(std::string(e.what()).find("dimension mismatch"), std::string::npos);
  }
}

TEST(ParseSpec, ResolutionAndVersionValidation) {
  EXPECT_THROW(sc::parse_spec(R"({"resolution": 4, "body": {"type": "ball", "r": 1.0}})"),
               sc::SchemaError);
  EXPECT_THROW(sc::parse_spec(R"({"version": 2, "body": {"type": "ball", "r": 1.0}})"),
               sc::SchemaError);
}

TEST(ParseSpec, SumConstantsValidation) {
  const std::string wrong_count = R"({
    "body": {
      "type": "orlicz_sum",
      "phi": {"type": "power", "q": 2.0},
      "ks": [1.0],
      "bodies": [{"type": "ball", "r": 1.0}, {"type": "ball", "r": 2.0}]
    }
  })";
  try {
    sc::parse_spec(wrong_count);
    FAIL() << "expected SchemaError";
  } catch (const sc::SchemaError& e) {
    EXPECT_NE(std::string(e.what()).find("one constant per body"), std::string::npos);
  }
  const std::string bad_k = R"({
    "body": {
      "type": "orlicz_sum",
      "phi": {"type": "power", "q": 2.0},
      "k": 0.0,
      "bodies": [{"type": "ball", "r": 1.0}, {"type": "ball", "r": 2.0}]
    }
  })";
  EXPECT_THROW(sc::parse_spec(bad_k), sc::SchemaError);
}

TEST(ParseSpec, LinearImageValidation) {
  const std::string mismatch = R"({
    "type": "linear_image",
    "matrix": [[1.0, 0.0]],
    "body": {"type": "ball", "r": 1.0}
  })";
  try {
    sc::parse_spec(mismatch);
    FAIL() << "expected SchemaError";
  } catch (const sc::SchemaError& e) {
    EXPECT_NE(std::string(e.what()).find("matrix dimension mismatch"), std::string::npos);
  }
  const std::string singular = R"({
    "type": "linear_image",
    "matrix": [[1.0, 2.0], [2.0, 4.0]],
    "body": {"type": "ball", "r": 1.0}
  })";
  EXPECT_THROW(sc::parse_spec(singular), sc::SchemaError);
}

TEST(ParseSpec, DegenerateTrigPolyIsASchemaError) {
  EXPECT_THROW(
      sc::parse_spec(R"({"type": "radial_trig_poly", "a0": 1.0, "cos": [1.5], "sin": []})"),
      sc::SchemaError);
}

TEST(ParseSpec, NegativeTermWeightIsASchemaError) {
  const std::string text = R"({
    "body": {
      "type": "orlicz_sum",
      "phi": {"type": "sum", "terms": [
        {"phi": {"type": "power", "q": 2.0}, "weight": -1.0},
        {"phi": {"type": "power", "q": 2.0}}
      ]},
      "bodies": [{"type": "ball", "r": 1.0}, {"type": "ball", "r": 2.0}]
    }
  })";
  EXPECT_THROW(sc::parse_spec(text), sc::SchemaError);
}

TEST(ParsePhi, StandaloneFragments) {
  const auto power = sc::parse_phi1(R"({"type": "power", "q": 2.5})");
  EXPECT_EQ(power.kind(), sc::OrliczFunction1::Kind::kPower);
  EXPECT_DOUBLE_EQ(power.power_exponent(), 2.5);
  const auto neglog = sc::parse_phi1(R"({"type": "neglog"})");
  EXPECT_TRUE(neglog.neglog_normalized());
  EXPECT_THROW(sc::parse_phi1(R"({"type": "power", "q": 0.5})"), sc::SchemaError);
}

TEST(Reports, RuleMetadataRoundTrip) {
  const auto rule = sc::SphereRule::circle(256);
  const auto meta = sc::describe_rule(rule);
  EXPECT_EQ(meta.kind, "circle_trapezoid");
  EXPECT_EQ(meta.resolution, 256);
  EXPECT_EQ(meta.nodes, 256);
  const auto back = sc::rule_metadata_from_json(sc::to_json(meta));
  EXPECT_EQ(back.kind, meta.kind);
  EXPECT_EQ(back.dim, meta.dim);
  EXPECT_EQ(back.nodes, meta.nodes);
}

TEST(Reports, DocumentRoundTripIsByteStable) {
  sc::ReportDocument doc;
  doc.command = "verify --suite all";
  doc.timestamp = "2026-01-02T03:04:05Z";
  doc.seed = 7;
  doc.rule = sc::describe_rule(sc::SphereRule::circle(64));

  sc::InequalityReport ineq;
  ineq.case_id = "MINKOWSKI_5_5";
  ineq.lhs = 3.5;
  ineq.rhs = 3.25;
  ineq.margin = 0.25;
  ineq.tolerance = 1e-9;
  ineq.scale = 3.5;
  ineq.pass = true;
  ineq.equality_case = false;
  doc.results.push_back(sc::to_json(ineq));

  sc::LimitReport limit;
  limit.ladder = {1e-2, 1e-3};
  limit.quotients = {3.1, 3.14};
  limit.radial_gaps = {1e-3, 1e-4};
  limit.extrapolated = 3.144;
  limit.target = 3.1444;
  limit.relative_error = 1e-4;
  limit.limit_scale = 1.5;
  limit.relative_tolerance = 1e-6;
  limit.gap_tolerance = 1e-5;
  limit.pass = false;
  doc.results.push_back(sc::to_json(limit));

  const std::string first = sc::serialize_report(doc);
  const auto reparsed = sc::parse_report(first);
  const std::string second = sc::serialize_report(reparsed);
  EXPECT_EQ(first, second);

  const auto ineq_back = sc::inequality_report_from_json(reparsed.results.at(0));
  EXPECT_EQ(ineq_back.case_id, "MINKOWSKI_5_5");
  EXPECT_DOUBLE_EQ(ineq_back.margin, 0.25);
  EXPECT_TRUE(ineq_back.pass);
  const auto limit_back = sc::limit_report_from_json(reparsed.results.at(1));
  EXPECT_EQ(limit_back.ladder.size(), 2u);
  EXPECT_DOUBLE_EQ(limit_back.target, 3.1444);
  EXPECT_FALSE(limit_back.pass);
}

TEST(Reports, EmptyResultListSerializesAsArray) {
  sc::ReportDocument doc;
  doc.command = "verify --case NONE";
  doc.timestamp = "2026-01-02T03:04:05Z";
  doc.rule = sc::describe_rule(sc::SphereRule::circle(64));
  const std::string text = sc::serialize_report(doc);
  EXPECT_NE(text.find("\"results\": []"), std::string::npos);
  const auto back = sc::parse_report(text);
  EXPECT_TRUE(back.results.is_array());
  EXPECT_TRUE(back.results.empty());
}

TEST(Reports, CsvSummaryShape) {
  std::vector<sc::InequalityReport> reports(3);
  reports[0].case_id = "MINKOWSKI_5_5";
  reports[0].margin = 0.5;
  reports[0].pass = true;
  reports[1].case_id = "HB_1_4";
  reports[1].margin = -1e-12;
  reports[1].pass = true;
  reports[2].case_id = "LOG_6_5";
  reports[2].margin = -0.25;
  reports[2].pass = false;
  const std::string csv = sc::inequality_csv(reports);
  EXPECT_EQ(csv.find("case,margin,pass"), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
  EXPECT_NE(csv.find("LOG_6_5,-0.25,false"), std::string::npos);

  sc::Json results = sc::Json::array();
  for (const auto& r : reports) results.push_back(sc::to_json(r));
  sc::LimitReport limit;
  limit.ladder = {1e-2, 1e-3};
  limit.relative_error = 1e-4;
  limit.pass = true;
  results.push_back(sc::to_json(limit));
  const std::string mixed = sc::results_csv(results);
  EXPECT_EQ(std::count(mixed.begin(), mixed.end(), '\n'), 5);
  EXPECT_NE(mixed.find("LIMIT,"), std::string::npos);
}

TEST(Reports, TimestampIsIsoUtc) {
  const std::string stamp = sc::current_timestamp();
  ASSERT_EQ(stamp.size(), 20u);
  EXPECT_EQ(stamp[4], '-');
  EXPECT_EQ(stamp[10], 'T');
  EXPECT_EQ(stamp.back(), 'Z');
}

TEST(TextFiles, MissingPathRaisesIoError) {
  EXPECT_THROW(sc::read_text_file("/nonexistent/starcalc/file.json"), sc::IoError);
  EXPECT_THROW(sc::write_text_file("/nonexistent/starcalc/file.json", "x"), sc::IoError);
}

TEST(TextFiles, WriteThenReadRoundTrip) {
  const std::string path = ::testing::TempDir() + "starcalc_io_test.txt";
  sc::write_text_file(path, "line one\nline two\n");
  EXPECT_EQ(sc::read_text_file(path), "line one\nline two\n");
  std::remove(path.c_str());
}
