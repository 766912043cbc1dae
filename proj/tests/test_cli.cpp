#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "bpphase/cli.hpp"
#include "bpphase/systems.hpp"

using namespace bpphase;

namespace {

struct Result {
  int status;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int status = cli::run(args, out, err);
  return {status, out.str(), err.str()};
}

io::CsvData csv(const Result& r) { return io::read_csv(r.out); }

std::filesystem::path temp_dir() {
  const char* dir = std::getenv("BPPHASE_TMP");
  return dir ? std::filesystem::path(dir) : std::filesystem::temp_directory_path();
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("verify") {
  SUBCASE("l = 7 passes every check") {
    const Result r = run({"verify", "--l", "7", "--format", "csv"});
    CHECK(r.status == 0);
    const io::CsvData data = csv(r);
    CHECK(data.header == std::vector<std::string>{"check", "deviation", "threshold", "passed"});
    CHECK(data.rows.size() >= 8);
    for (const auto& row : data.rows) CHECK_MESSAGE(row[3] == "1", row[0]);
  }
  SUBCASE("l = 0 degenerate space") { CHECK(run({"verify", "--l", "0"}).status == 0); }
  SUBCASE("shifted origin") { CHECK(run({"verify", "--l", "4", "--theta0", "1.1"}).status == 0); }
  SUBCASE("negative l is a usage error") {
    const Result r = run({"verify", "--l", "-3"});
    CHECK(r.status == 2);
    CHECK_FALSE(r.err.empty());
  }
  SUBCASE("an impossible tolerance fails with status 1") {
    // Gram deviations are ~1e-16; a 1e-30 threshold cannot be met.
    CHECK(run({"verify", "--l", "3", "--tol", "1e-30"}).status == 1);
  }
}

TEST_CASE("usage errors") {
  CHECK(run({}).status == 2);
  CHECK(run({"verify"}).status == 2);
  CHECK(run({"verify", "--l", "2", "--bogus"}).status == 2);
  CHECK(run({"frobnicate"}).status == 2);
  CHECK(run({"rotor-table", "--l", "2", "--format", "xml"}).status == 2);
  CHECK(run({"rotor-table", "--l", "2", "--mass", "-1"}).status == 2);
  CHECK(run({"verify", "--l", "2", "rotor-table", "--l", "2"}).status == 2);
  CHECK(run({"--help"}).status == 0);
}

TEST_CASE("rotor-table") {
  SUBCASE("l = 2 csv") {
    const Result r = run({"rotor-table", "--l", "2", "--format", "csv"});
    CHECK(r.status == 0);
    const io::CsvData data = csv(r);
    CHECK(data.header == std::vector<std::string>{"m", "r_expectation", "semiclassical_target",
                                                  "rel_error", "wrap_flag"});
    REQUIRE(data.rows.size() == 5);
    const double expected[] = {-1.5, -0.5, 0.5, 1.5, 0.0};
    for (std::size_t k = 0; k < 5; ++k) {
      CHECK(std::stod(data.rows[k][1]) == expected[k]);
      CHECK(data.rows[k][4] == (k == 4 ? "1" : "0"));
    }
  }
  SUBCASE("doubling the mass halves every row") {
    const io::CsvData base = csv(run({"rotor-table", "--l", "2", "--format", "csv"}));
    const io::CsvData heavy = csv(run({"rotor-table", "--l", "2", "--mass", "2", "--format", "csv"}));
    for (std::size_t k = 0; k < 5; ++k) CHECK(std::stod(heavy.rows[k][1]) == 0.5 * std::stod(base.rows[k][1]));
  }
  SUBCASE("l = 0 single wrapped row") {
    const io::CsvData data = csv(run({"rotor-table", "--l", "0", "--format", "csv"}));
    REQUIRE(data.rows.size() == 1);
    CHECK(data.rows[0][0] == "0");
    CHECK(data.rows[0][4] == "1");
  }
  SUBCASE("field adds a field_shift column") {
    const io::CsvData data = csv(run({"rotor-table", "--l", "3", "--larmor", "0.05", "--format", "csv"}));
    CHECK(data.header.back() == "field_shift");
    for (const auto& row : data.rows) {
      if (row[4] == "0") CHECK(std::abs(std::stod(row[5]) + 0.05) <= 1e-14);
    }
  }
}

TEST_CASE("oscillator-table") {
  const Result r = run({"oscillator-table", "--s", "4", "--omega", "2", "--format", "csv"});
  CHECK(r.status == 0);
  const io::CsvData data = csv(r);
  CHECK(data.header[0] == "n");
  REQUIRE(data.rows.size() == 5);
  for (std::size_t n = 0; n < 4; ++n) CHECK(std::abs(std::stod(data.rows[n][1]) - 2.0) <= 1e-14);
  CHECK(std::abs(std::stod(data.rows[4][1]) + 8.0) <= 1e-14);
  CHECK(data.rows[4][4] == "1");
  CHECK(run({"oscillator-table"}).status == 2);
  CHECK(run({"oscillator-table", "--s", "3", "--omega", "0"}).status == 2);
}

TEST_CASE("larmor") {
  auto value = [](const io::CsvData& d, const std::string& key) {
    for (const auto& row : d.rows) {
      if (row[0] == key) return row[1].empty() ? 0.0 : std::stod(row[1]);
    }
    FAIL("missing " << key);
    return 0.0;
  };
  SUBCASE("natural units, ω_L = 0.05, l = 5") {
    const Result r = run({"larmor", "--l", "5", "--larmor", "0.05", "--format", "csv"});
    CHECK(r.status == 0);
    const io::CsvData d = csv(r);
    CHECK(std::abs(value(d, "measured_shift") + 0.05) <= 1e-13);
    CHECK(value(d, "difference") <= 1e-13);
  }
  SUBCASE("zero field") {
    const Result r = run({"larmor", "--l", "5", "--field", "0", "--format", "csv"});
    CHECK(r.status == 0);
    CHECK(value(csv(r), "measured_shift") == 0.0);
  }
  SUBCASE("Gaussian electron on a 1 cm ring") {
    const Result r = run({"larmor", "--l", "10", "--units", "gaussian", "--radius", "1", "--field", "1",
                          "--format", "csv"});
    CHECK(r.status == 0);
    const io::CsvData d = csv(r);
    const double omega_l = gaussian::kElectronCharge / (2.0 * gaussian::kElectronMass * gaussian::kSpeedOfLight);
    CHECK(value(d, "larmor_frequency") == doctest::Approx(omega_l).epsilon(1e-15));
    CHECK(std::abs(value(d, "measured_shift") + omega_l) <= 1e-10 * omega_l);
  }
  SUBCASE("missing field") { CHECK(run({"larmor", "--l", "5"}).status == 2); }
  SUBCASE("l = 0 has no interior") { CHECK(run({"larmor", "--l", "0", "--field", "1"}).status == 2); }
}

TEST_CASE("converge") {
  SUBCASE("0.5 over 10,100,1000") {
    const Result r = run({"converge", "--m-fraction", "0.5", "--l-list", "10,100,1000", "--format", "csv"});
    CHECK(r.status == 0);
    const io::CsvData d = csv(r);
    CHECK(d.header == std::vector<std::string>{"l", "m", "r_expectation", "target", "rel_error"});
    REQUIRE(d.rows.size() == 3);
    const double expected[] = {0.1, 0.01, 0.001};
    for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(std::stod(d.rows[i][4]) - expected[i]) <= 1e-10);
  }
  SUBCASE("single l") { CHECK(csv(run({"converge", "--m-fraction", "0.3", "--l-list", "20", "--format", "csv"})).rows.size() == 1); }
  SUBCASE("m = l is rejected") { CHECK(run({"converge", "--m-fraction", "0.9", "--l-list", "2"}).status == 2); }
  SUBCASE("rows come out sorted") {
    const io::CsvData d = csv(run({"converge", "--m-fraction", "0.5", "--l-list", "40,10,20", "--format", "csv"}));
    CHECK(d.rows[0][0] == "10");
    CHECK(d.rows[2][0] == "40");
  }
  SUBCASE("gnuplot script next to the data file") {
    const auto data = temp_dir() / "converge.csv";
    const auto script = temp_dir() / "converge.gp";
    const Result r = run({"converge", "--m-fraction", "0.5", "--l-list", "10,20", "--format", "csv", "--output",
                          data.string(), "--gnuplot", script.string()});
    CHECK(r.status == 0);
    CHECK(r.out.empty());
    CHECK(io::read_csv(slurp(data)).rows.size() == 2);
    CHECK(slurp(script).find(data.string()) != std::string::npos);
    CHECK(run({"converge", "--m-fraction", "0.5", "--l-list", "10", "--gnuplot", script.string()}).status == 2);
  }
}

TEST_CASE("dump-phase-states") {
  const Result r = run({"dump-phase-states", "--l", "1", "--format", "csv"});
  CHECK(r.status == 0);
  const io::CsvData d = csv(r);
  CHECK(d.header == std::vector<std::string>{"n", "theta", "quantum_number", "re", "im"});
  REQUIRE(d.rows.size() == 9);
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(std::abs(std::stod(d.rows[k][3]) - 1.0 / std::sqrt(3.0)) <= 1e-16);
    CHECK(std::stod(d.rows[k][4]) == 0.0);
  }
  CHECK(run({"dump-phase-states", "--s", "3"}).status == 0);
  CHECK(run({"dump-phase-states"}).status == 2);
  CHECK(run({"dump-phase-states", "--l", "1", "--s", "1"}).status == 2);
}

TEST_CASE("outputs round-trip to the in-memory report") {
  const ExpectationReport report =
      expectation_table(make_space(SpaceKind::rotor, 6), SystemSpec::magnetic_rotor(0.037, 1.3, 0.9, 1.1));
  const std::vector<std::string> common{"rotor-table", "--l", "6", "--larmor", "0.037", "--mass", "1.3",
                                        "--radius", "0.9", "--hbar", "1.1"};

  auto with = [&](std::string format) {
    auto args = common;
    args.insert(args.end(), {"--format", format});
    return run(args);
  };

  const io::CsvData d = csv(with("csv"));
  REQUIRE(d.rows.size() == report.rows.size());
  for (std::size_t k = 0; k < d.rows.size(); ++k) {
    const auto& row = report.rows[k];
    CHECK(std::stoll(d.rows[k][0]) == row.quantum_number);
    CHECK(std::stod(d.rows[k][1]) == row.r_expectation);
    CHECK(std::stod(d.rows[k][2]) == row.semiclassical_target);
    if (row.rel_error) {
      CHECK(std::stod(d.rows[k][3]) == *row.rel_error);
    } else {
      CHECK(d.rows[k][3].empty());
    }
    CHECK((d.rows[k][4] == "1") == row.wrap);
    CHECK(std::stod(d.rows[k][5]) == *row.field_shift);
  }

  const auto j = nlohmann::json::parse(with("json").out);
  CHECK(j["config"]["subcommand"] == "rotor-table");
  REQUIRE(j["rows"].size() == report.rows.size());
  for (std::size_t k = 0; k < report.rows.size(); ++k) {
    const auto& row = report.rows[k];
    CHECK(j["rows"][k]["m"].get<long long>() == row.quantum_number);
    CHECK(j["rows"][k]["r_expectation"].get<double>() == row.r_expectation);
    CHECK(j["rows"][k]["field_shift"].get<double>() == *row.field_shift);
    CHECK(j["rows"][k]["wrap_flag"].get<bool>() == row.wrap);
  }
  CHECK(j["summary"]["interior_shift"].get<double>() == *report.summary.interior_shift);
}

TEST_CASE("identical configs give byte-identical output") {
  for (const std::string format : {"csv", "json", "table"}) {
    const std::vector<std::string> args{"oscillator-table", "--s", "9", "--omega", "1.7", "--format", format};
    CHECK(run(args).out == run(args).out);
  }
  const std::vector<std::string> args{"verify", "--l", "5", "--format", "json"};
  CHECK(run(args).out == run(args).out);
  CHECK(run(args).out.find("generated") == std::string::npos);

  auto with_header = args;
  with_header.push_back("--header");
  const auto j = nlohmann::json::parse(run(with_header).out);
  CHECK(j["header"].get<std::string>().find("bpphase") == 0);
}
