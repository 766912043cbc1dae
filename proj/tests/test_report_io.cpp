#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "bpphase/report_io.hpp"

using namespace bpphase::io;

TEST_CASE("format_real uses 17 significant digits") {
  CHECK(format_real(-1.5) == "-1.5");
  CHECK(format_real(0.1) == "0.10000000000000001");
  CHECK(format_real(1.0 / 3.0) == "0.33333333333333331");
  CHECK(format_real(1e-300) == "1e-300");
  CHECK(format_real(NAN).empty());
}

TEST_CASE("parse_format") {
  CHECK(parse_format("csv") == OutputFormat::csv);
  CHECK(parse_format("json") == OutputFormat::json);
  CHECK(parse_format("table") == OutputFormat::table);
  CHECK_THROWS_AS(parse_format("xml"), std::invalid_argument);
}

TEST_CASE("CSV output") {
  Document doc;
  doc.table.columns = {"name", "value", "flag", "maybe"};
  doc.table.rows.push_back({std::string("a,b"), 2.5, true, std::optional<double>{}});
  doc.table.rows.push_back({std::string("say \"hi\""), -0.0, false, std::optional<double>{3.0}});
  std::ostringstream out;
  write_csv(out, doc);
  CHECK(out.str() ==
        "name,value,flag,maybe\n"
        "\"a,b\",2.5,1,\n"
        "\"say \"\"hi\"\"\",-0,0,3\n");

  const CsvData back = read_csv(out.str());
  CHECK(back.header == doc.table.columns);
  REQUIRE(back.rows.size() == 2);
  CHECK(back.rows[0][0] == "a,b");
  CHECK(back.rows[1][0] == "say \"hi\"");
  CHECK(back.rows[0][3].empty());
}

TEST_CASE("CSV header comment is skipped on read") {
  Document doc;
  doc.header = "bpphase test";
  doc.table.columns = {"x"};
  doc.table.rows.push_back({1LL});
  std::ostringstream out;
  write_csv(out, doc);
  CHECK(out.str().rfind("# bpphase test\n", 0) == 0);
  const CsvData back = read_csv(out.str());
  CHECK(back.header == std::vector<std::string>{"x"});
  CHECK(back.rows.at(0).at(0) == "1");
}

TEST_CASE("read_csv rejects malformed input") {
  CHECK_THROWS_AS(read_csv(""), std::runtime_error);
  CHECK_THROWS_AS(read_csv("a,b\n1\n"), std::runtime_error);
  CHECK_THROWS_AS(read_csv("a\n\"open\n"), std::runtime_error);
}

TEST_CASE("random reals survive CSV and JSON round trips exactly") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> mantissa(-1.0, 1.0);
  std::uniform_int_distribution<int> exponent(-300, 300);
  Document doc;
  doc.table.columns = {"i", "x"};
  std::vector<double> values;
  for (long long i = 0; i < 500; ++i) {
    const double x = std::ldexp(mantissa(rng), exponent(rng));
    values.push_back(x);
    doc.table.rows.push_back({i, x});
  }

  std::ostringstream csv;
  write_csv(csv, doc);
  const CsvData back = read_csv(csv.str());
  for (std::size_t i = 0; i < values.size(); ++i) CHECK(std::stod(back.rows[i][1]) == values[i]);

  std::ostringstream json;
  write_json(json, doc);
  const auto parsed = nlohmann::json::parse(json.str());
  for (std::size_t i = 0; i < values.size(); ++i) CHECK(parsed["rows"][i]["x"].get<double>() == values[i]);
}

TEST_CASE("JSON document layout") {
  Document doc;
  doc.config["subcommand"] = "verify";
  doc.table.columns = {"v", "w"};
  doc.table.rows.push_back({std::optional<double>{}, INFINITY});
  doc.summary["ok"] = true;
  std::ostringstream out;
  write_json(out, doc);
  const auto parsed = nlohmann::json::parse(out.str());
  CHECK(parsed.contains("config"));
  CHECK(parsed.contains("rows"));
  CHECK(parsed.contains("summary"));
  CHECK_FALSE(parsed.contains("header"));
  CHECK(parsed["rows"][0]["v"].is_null());
  CHECK(parsed["rows"][0]["w"].is_null());
}

TEST_CASE("text table") {
  Document doc;
  doc.table.columns = {"m", "wrap_flag"};
  doc.table.rows.push_back({-1LL, false});
  doc.table.rows.push_back({1LL, true});
  doc.summary["edge_value"] = 0.5;
  std::ostringstream out;
  write_text(out, doc);
  CHECK(out.str() == " m  wrap_flag\n-1          -\n 1        yes\n\nedge_value: 0.5\n");
}
