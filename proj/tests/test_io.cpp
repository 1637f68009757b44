#include <doctest.h>

#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "newton_shape/cli.hpp"
#include "newton_shape/corner_engine.hpp"
#include "newton_shape/errors.hpp"

using namespace nshape;
using namespace nshape::test;

namespace {

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

CliRun cli(std::vector<std::string> args) {
  args.insert(args.begin(), "newton-shape");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  CliRun r;
  r.code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string data(const char* name) { return std::string(NSHAPE_TEST_DATA) + "/" + name; }

}  // namespace

TEST_CASE("parse examples") {
  const LaurentPoly p = P(kUnitP);
  CHECK(p.size() == 4);
  CHECK(p == LaurentPoly::monomial(1, 2, 1) + LaurentPoly::monomial(1, 6, 2) + LaurentPoly::monomial(6, 8, 3) +
                 LaurentPoly::monomial(9, 10, 4));
  CHECK(P("x^(-1/3)") == LaurentPoly::monomial(1, q(-1, 3), 0));
  CHECK(P(" x * x^2 * y*y ") == LaurentPoly::monomial(1, 3, 2));
  CHECK(P("-3/6*x") == LaurentPoly::monomial(q(-1, 2), 1, 0));
  CHECK(P("0").is_zero());
}

TEST_CASE("parse errors carry offsets") {
  try {
    parse_poly("x + + y");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 4);
    CHECK_FALSE(e.expected().empty());
  }
  CHECK_THROWS_AS(parse_poly("x^(1/0)"), ParseError);
  CHECK_THROWS_AS(parse_poly("y^-1"), ParseError);
  CHECK_THROWS_AS(parse_poly("z"), ParseError);
  CHECK_THROWS_AS(parse_poly(""), ParseError);
  CHECK_THROWS_AS(parse_poly("x*"), ParseError);
}

TEST_CASE("render") {
  CHECK(render_poly(LaurentPoly()) == "0");
  CHECK(render_poly(P("x + y")) == "y + x");
  CHECK(render_poly(P("x^2 + x*y + y^2")) == "y^2 + x*y + x^2");
  std::mt19937_64 rng(99);
  for (int i = 0; i < 300; ++i) {
    const LaurentPoly p = random_poly(rng, 1 + i % 4, 6);
    CHECK(parse_poly(render_poly(p)) == p);
  }
}

TEST_CASE("cli: bracket of the unit pair") {
  const CliRun r = cli({"bracket", data("unit_p.txt"), data("unit_q.txt")});
  CHECK(r.code == 0);
  CHECK(r.out.find("1") != std::string::npos);
  const CliRun j = cli({"bracket", data("unit_p.txt"), data("unit_q.txt"), "--json"});
  const auto doc = nlohmann::json::parse(j.out);
  CHECK(doc["schema_version"] == 1);
  CHECK(doc["command"] == "bracket");
}

TEST_CASE("cli: search over sums 3-15 with the table1 profile") {
  const CliRun r = cli({"search", "--min", "3", "--max", "15", "--profile", "table1"});
  CHECK(r.code == 0);
  CHECK(r.out.find("13 candidate rows, 0 survivors") != std::string::npos);
}

TEST_CASE("cli: xlist json contains the reference list") {
  const CliRun r = cli({"xlist", "--bound", "50", "--json"});
  REQUIRE(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["results"]["missing"].empty());
  std::vector<LatticePoint> pairs;
  for (const auto& p : doc["results"]["pairs"]) {
    pairs.push_back({std::stol(p[0].get<std::string>()), std::stol(p[1].get<std::string>())});
  }
  for (const auto& p : reference_x_list()) CHECK(std::find(pairs.begin(), pairs.end(), p) != pairs.end());
}

TEST_CASE("cli: json output is byte-stable") {
  CHECK(cli({"search", "--min", "16", "--max", "20", "--profile", "full", "--json"}).out ==
        cli({"search", "--min", "16", "--max", "20", "--profile", "full", "--json"}).out);
}

TEST_CASE("cli: exit codes") {
  CHECK(cli({"parse", data("bad.txt")}).code == 2);
  CHECK(cli({"frobnicate"}).code == 1);
  CHECK(cli({"parse", data("does_not_exist.txt")}).code == 1);
  CHECK(cli({"pipeline", data("x.txt"), data("y.txt"), "--m", "4", "--n", "3"}).code == 3);
  const CliRun ok = cli({"parse", data("unit_p.txt")});
  CHECK(ok.code == 0);
  CHECK(P(ok.out.c_str()) == P(kUnitP));
}

TEST_CASE("cli: solve-f, auto, analyze, rand-pair") {
  const CliRun s = cli({"solve-f", data("control.txt"), "--dir", "1,0", "--max-y", "5"});
  CHECK(s.code == 0);
  CHECK(s.out.find("F = ") != std::string::npos);
  const CliRun a = cli({"auto", data("x.txt"), "--flip", "psi2"});
  CHECK(a.code == 0);
  CHECK(a.out.find("x^-1") != std::string::npos);
  const CliRun an = cli({"analyze", data("unit_p.txt"), "--dir", "1,-2", "--json"});
  CHECK(an.code == 0);
  CHECK_NOTHROW(static_cast<void>(nlohmann::json::parse(an.out)));
  const CliRun rp = cli({"rand-pair", "--seed", "5", "--steps", "3", "--json"});
  CHECK(rp.code == 0);
  const auto doc = nlohmann::json::parse(rp.out);
  CHECK(bracket(P(doc["results"]["P"].get<std::string>().c_str()), P(doc["results"]["Q"].get<std::string>().c_str())) ==
        P("1"));
}
