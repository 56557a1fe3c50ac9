#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "zetadiff/bigreal.hpp"
#include "zetadiff/cli.hpp"
#include "zetadiff/errors.hpp"

using namespace zetadiff;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

// Non-comment CSV lines split on commas (no quoted cells in these outputs).
std::vector<std::vector<std::string>> csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

std::string field(const std::string& text, const std::string& key) {
  for (const auto& row : csv(text))
    if (row.size() == 2 && row[0] == key) return row[1];
  return "";
}

std::string truncated(const std::string& value, int digits) {
  return BigReal::parse(value, digits_to_bits(60)).to_sci_truncated(digits);
}

}  // namespace

TEST_CASE("index lists and complex numbers parse") {
  CHECK(cli::parse_indices("7") == std::vector<long>{7});
  CHECK(cli::parse_indices("1..4") == std::vector<long>{1, 2, 3, 4});
  CHECK(cli::parse_indices("20,50,100") == std::vector<long>{20, 50, 100});
  CHECK(cli::parse_indices("1..2,9") == std::vector<long>{1, 2, 9});
  CHECK_THROWS_AS(cli::parse_indices("5..1"), ValidationError);
  CHECK_THROWS_AS(cli::parse_indices("x"), ValidationError);
  CHECK_THROWS_AS(cli::parse_indices("1,,2"), ValidationError);

  Bits p = digits_to_bits(20);
  auto z = cli::parse_complex("0.5+14.13i", p);
  CHECK(z.re().to_double() == 0.5);
  CHECK(z.im().to_double() == doctest::Approx(14.13));
  z = cli::parse_complex("2-3i", p);
  CHECK(z.im().to_double() == -3.0);
  z = cli::parse_complex("-1", p);
  CHECK(z.re().to_double() == -1.0);
  CHECK(z.im().is_zero());
  z = cli::parse_complex("-i", p);
  CHECK(z.im().to_double() == -1.0);
  CHECK(cli::parse_complex("1e-3", p).re().to_double() == doctest::Approx(1e-3));
  CHECK_THROWS_AS(cli::parse_complex("1+", p), ValidationError);
  CHECK_THROWS_AS(cli::parse_complex("abc", p), ValidationError);
}

TEST_CASE("seq reproduces the tabulated b_n and d_n") {
  auto r = run({"seq", "b", "--n", "1..50", "--digits", "12"});
  REQUIRE(r.code == 0);
  auto rows = csv(r.out);
  REQUIRE(rows.size() == 51);
  CHECK(rows[0] == std::vector<std::string>{"n", "value", "method", "digits"});
  CHECK(truncated(rows[1][1], 6) == "-7.72156e-02");
  CHECK(truncated(rows[50][1], 6) == "-1.08802e-11");
  CHECK(rows[50][2] == "binomial");
  CHECK(rows[50][3] == "12");

  r = run({"seq", "d", "--n", "20,50,100,200", "--digits", "10"});
  REQUIRE(r.code == 0);
  rows = csv(r.out);
  CHECK(rows[1][1].rfind("+1.93", 0) == 0);
  CHECK(rows[2][1].rfind("+1.987", 0) == 0);
  CHECK(rows[3][1].rfind("+1.996", 0) == 0);
  CHECK(rows[4][1].rfind("+1.9991", 0) == 0);

  r = run({"seq", "delta", "--n", "0..1"});
  rows = csv(r.out);
  REQUIRE(rows.size() == 3);
  CHECK(BigReal::parse(rows[1][1], digits_to_bits(20)).is_zero());
  CHECK(BigReal::parse(rows[2][1], digits_to_bits(20)).is_zero());
  CHECK(rows[1][3] == "15");
}

TEST_CASE("alternative methods and shifts") {
  auto a = run({"seq", "delta", "--n", "12", "--method", "series", "--digits", "20"});
  auto b = run({"seq", "delta", "--n", "12", "--digits", "20"});
  REQUIRE(a.code == 0);
  CHECK(csv(a.out)[1][1] == csv(b.out)[1][1]);
  CHECK(csv(a.out)[1][2] == "series");
  auto m = run({"seq", "d", "--n", "30", "--method", "moebius"});
  CHECK(m.code == 0);
  CHECK(csv(m.out)[1][2] == "moebius");
  auto sh = run({"seq", "a", "--n", "100", "--m", "1", "--k", "2"});
  CHECK(sh.code == 0);
  CHECK(csv(sh.out)[1][2] == "residue-adjusted");
  CHECK(run({"seq", "A", "--n", "10", "--m", "3", "--k", "2"}).code == 2);
}

TEST_CASE("CSV values round-trip through decimal parsing") {
  for (const char* kind : {"b", "delta", "d", "c"}) {
    auto r = run({"seq", kind, "--n", "2..30", "--digits", "17"});
    REQUIRE(r.code == 0);
    auto rows = csv(r.out);
    for (size_t i = 1; i < rows.size(); ++i) {
      BigReal v = BigReal::parse(rows[i][1], digits_to_bits(17));
      CHECK(v.to_sci(17) == rows[i][1]);
    }
  }
}

TEST_CASE("JSON output carries values as strings") {
  auto r = run({"seq", "b", "--n", "5,10", "--format", "json"});
  REQUIRE(r.code == 0);
  auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["command"] == "seq");
  REQUIRE(doc["rows"].size() == 2);
  CHECK(doc["rows"][1]["n"] == "10");
  CHECK(doc["rows"][1]["value"].is_string());
  CHECK(doc["rows"][1]["value"].get<std::string>().rfind("-2.83697", 0) == 0);
  auto rep = nlohmann::json::parse(run({"identity", "--format", "json"}).out);
  CHECK(rep["n"] == "499");
}

TEST_CASE("output does not depend on the thread count") {
  auto one = run({"seq", "b", "--n", "1..80", "--threads", "1", "--digits", "25"});
  auto four = run({"seq", "b", "--n", "1..80", "--threads", "4", "--digits", "25"});
  CHECK(one.out == four.out);
  auto c1 = run({"contour", "inv", "--n", "8", "--threads", "1"});
  auto c4 = run({"contour", "inv", "--n", "8", "--threads", "3"});
  CHECK(c1.out == c4.out);
}

TEST_CASE("usage errors exit with status 2") {
  auto empty = run({});
  CHECK(empty.code == 2);
  CHECK(empty.err.find("Usage") != std::string::npos);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"seq", "b"}).code == 2);
  CHECK(run({"seq", "q", "--n", "3"}).code == 2);
  CHECK(run({"seq", "b", "--n", "5..1"}).code == 2);
  CHECK(run({"seq", "b", "--n", "3", "--digits", "9"}).code == 2);
  CHECK(run({"seq", "b", "--n", "3", "--range", "1..2"}).code == 2);
  CHECK(run({"seq", "b", "--n", "3", "--method", "moebius"}).code == 2);
  CHECK(run({"seq", "b", "--n", "3", "--format", "xml"}).code == 2);
  CHECK(run({"contour", "left", "--n", "3"}).code == 2);
  CHECK(run({"contour", "right", "--n", "50", "--digits", "29"}).code == 2);
  CHECK(run({"newton"}).code == 2);
  CHECK(run({"zero-model", "--zero", "1.5,3,1e-9"}).code == 2);
  CHECK(run({"signs", "--n", "5"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("signs lists the sign changes of b_n") {
  auto r = run({"signs", "--n", "200"});
  REQUIRE(r.code == 0);
  std::vector<long> got;
  auto rows = csv(r.out);
  for (size_t i = 1; i < rows.size(); ++i) got.push_back(std::stol(rows[i][1]));
  CHECK(got == std::vector<long>{3, 7, 13, 21, 29, 40, 52, 65, 80, 97, 115, 135, 157, 180});
  auto pos = r.out.find("# alpha: ");
  REQUIRE(pos != std::string::npos);
  double alpha = std::stod(r.out.substr(pos + 9));
  CHECK(std::abs(alpha / (M_PI / 4) - 1) < 0.1);

  auto small = csv(run({"signs", "--n", "10"}).out);
  REQUIRE(small.size() == 3);
  CHECK(small[1][1] == "3");
  CHECK(small[2][1] == "7");
}

TEST_CASE("figure2 emits aligned scaled columns") {
  auto r = run({"figure2"});
  REQUIRE(r.code == 0);
  auto rows = csv(r.out);
  REQUIRE(rows.size() == 497);
  CHECK(rows[0] == std::vector<std::string>{"n", "scaled_exact", "scaled_asym"});
  double worst = 0;
  for (size_t i = 1; i < rows.size(); ++i) {
    long n = std::stol(rows[i][0]);
    double ex = std::stod(rows[i][1]), as = std::stod(rows[i][2]);
    // scaled main term is (2/pi)^{1/4} cos(2 sqrt(pi n) - 5 pi/8)
    CHECK(as == doctest::Approx(std::pow(2 / M_PI, 0.25) * std::cos(2 * std::sqrt(M_PI * n) - 5 * M_PI / 8)).epsilon(1e-9));
    CHECK(std::abs(as) <= 0.8933);
    if (n >= 50) worst = std::max(worst, std::abs(ex - as));
  }
  CHECK(worst < 0.2);
  auto rows2 = cli::figure2_rows(5, 500);
  CHECK(rows2.size() == 496);
}

TEST_CASE("identity shows the near-coincidence at n = 499") {
  auto r = run({"identity"});
  REQUIRE(r.code == 0);
  CHECK(field(r.out, "c_n - H_n + 1").rfind("0.57821566490153286060651209008240243", 0) == 0);
  CHECK(field(r.out, "gamma").rfind("0.57721566490153286060651209008240243", 0) == 0);
  CHECK(std::stol(field(r.out, "matching_digits")) >= 30);
  auto rep = cli::identity_report(499, 40);
  BigReal eps = rep.difference - BigReal(mpq_class(1, 1000), rep.difference.precision());
  CHECK(eps.log10_abs() < -30);
  auto small = cli::identity_report(2, 40);
  BigReal eps2 = small.difference - BigReal(mpq_class(1, 1000), small.difference.precision());
  CHECK(eps2.log10_abs() > -3);
}

TEST_CASE("zero model thresholds and terms") {
  auto zs = cli::default_zero_model();
  REQUIRE(zs.size() == 2);
  CHECK(cli::zero_model_threshold(zs[0]) == doctest::Approx(1e18).epsilon(1e-9));
  CHECK(cli::zero_model_threshold(zs[1]) == doctest::Approx(1e28).epsilon(1e-9));
  CHECK(cli::zero_model_term(zs[0], 100) == doctest::Approx(1e-9 * 10 * std::cos(14.13 * std::log(100.0))));
  auto r = run({"zero-model", "--n", "100"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("illustrative model") != std::string::npos);
  auto rows = csv(r.out);
  REQUIRE(rows.size() == 3);
  CHECK(std::stod(rows[1][3]) == doctest::Approx(1e-9 * 10 * std::cos(14.13 * std::log(100.0))).epsilon(1e-5));
  auto custom = csv(run({"zero-model", "--n", "4", "--zero", "0.5,10,0.01"}).out);
  REQUIRE(custom.size() == 2);
  CHECK(std::stod(custom[1][4]) == doctest::Approx(0.02).epsilon(1e-5));
}

TEST_CASE("numeric commands") {
  auto nw = run({"newton", "--s", "-1", "--terms", "500"});
  REQUIRE(nw.code == 0);
  CHECK(field(nw.out, "value_re") == "+4.1666666666666666667e-01");
  auto need = run({"newton", "--s", "1+2i", "--terms", "10", "--digits", "15"});
  CHECK(need.code == 2);
  CHECK(need.err.find("N >= ") != std::string::npos);

  auto ct = run({"contour", "left", "--n", "10"});
  REQUIRE(ct.code == 0);
  auto rows = csv(ct.out);
  CHECK(truncated(rows[1][1], 6) == "-2.83697e-05");
  CHECK(rows[1][2] == "contour-zeta-left");
  auto sd = csv(run({"contour", "saddle", "--n", "10", "--quad-panels", "2"}).out);
  CHECK(truncated(sd[1][1], 6) == "-2.83697e-05");
  CHECK(sd[0].size() == 10);
  auto cut = run({"contour", "right", "--n", "5", "--quad-T", "10"});
  CHECK(cut.code == 0);

  auto gf = run({"gf-check", "--order", "12"});
  CHECK(gf.code == 0);
  CHECK(csv(gf.out).size() == 12);
  auto as = csv(run({"asym", "b", "--n", "100"}).out);
  CHECK(as[1][2] == "asym-b");
  CHECK(run({"asym", "a", "--n", "100", "--k", "3", "--convention", "sideways"}).code == 2);
}

TEST_CASE("verify fast passes and writes to --out") {
  std::string path = "verify_fast_out.csv";
  auto r = run({"verify", "fast", "--out", path});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str().find("# status: pass") != std::string::npos);
  std::remove(path.c_str());
  CHECK(run({"verify", "nightly"}).code == 2);
}
