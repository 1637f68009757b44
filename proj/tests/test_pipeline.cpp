#include <doctest.h>

#include "helpers.hpp"
#include "newton_shape/errors.hpp"
#include "newton_shape/io.hpp"
#include "newton_shape/pipeline.hpp"

using namespace nshape;
using namespace nshape::test;

namespace {

const StageCheck* find_check(const PipelineState& s, const std::string& name) {
  for (const auto& r : s.log) {
    for (const auto& c : r.checks) {
      if (c.name == name) return &c;
    }
  }
  return nullptr;
}

const StageCheck* first_failure(const PipelineState& s) {
  for (const auto& r : s.log) {
    for (const auto& c : r.checks) {
      if (!c.pass) return &c;
    }
  }
  return nullptr;
}

}  // namespace

TEST_CASE("case III shift") {
  const LaurentPoly p = P("x^3") * P("y - 1").pow(4) + P("x");
  const LaurentPoly qq = P("x^6") * P("y - 1").pow(8) + P("x^2");
  const RegularCorner c{PlanePoint(Rational(3), Rational(4)), Direction(1, 0), std::nullopt};
  const CaseIIIShift r = case_iii_shift(p, qq, c);
  CHECK(r.lambda == 1);
  CHECK(leading_form(r.P, Direction(1, 0)) == P("x^3*y^4"));
  CHECK(en_point(r.P, Direction(1, 0)) == en_point(p, Direction(1, 0)));
  CHECK(leading_form(r.P, Direction(-1, 0)) == leading_form(p, Direction(-1, 0)));
}

TEST_CASE("case III shift: rho must divide l") {
  const LaurentPoly p = P("x") * P("x*y^4 - 1").pow(3);
  const RegularCorner c{PlanePoint(Rational(4), Rational(12)), Direction(4, -1), std::nullopt};
  CHECK_THROWS_AS(case_iii_shift(p, p * p, c), RhoDoesNotDivideL);
}

TEST_CASE("case III shift: en preserved on random witnesses") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> lam(-3, 3), k(1, 4), r(2, 5);
  int checked = 0;
  for (int i = 0; i < 100; ++i) {
    long l0 = lam(rng);
    if (l0 == 0) l0 = 1;
    const long kk = k(rng), rr = r(rng);
    const LaurentPoly lf = LaurentPoly::monomial(1, kk, 0) * (P("y") - LaurentPoly::constant(l0)).pow(rr);
    const LaurentPoly p = lf + random_poly(rng, 1, 3) * P("x^-5");
    const LaurentPoly qq = lf * lf + P("x^-7");
    const RegularCorner c{PlanePoint(Rational(kk), Rational(rr)), Direction(1, 0), std::nullopt};
    if (leading_form(p, Direction(1, 0)) != lf) continue;
    const CaseIIIShift s = case_iii_shift(p, qq, c);
    CHECK(s.lambda == l0);
    CHECK(en_point(s.P, Direction(1, 0)) == en_point(p, Direction(1, 0)));
    ++checked;
  }
  CHECK(checked > 50);
}

TEST_CASE("cut above the diagonal") {
  const LaurentPoly r = P("x") * P("x*y^4 - 1").pow(3);
  const LaurentPoly p = r.pow(2), qq = r.pow(3);
  const RegularCorner c{PlanePoint(Rational(4), Rational(12)), Direction(4, -1), std::nullopt};
  const DiagonalCut cut = cut_above_diagonal(p, qq, c);
  CHECK(cut.lambda == 1);
  CHECK(cut.m_lambda == 6);
  CHECK(cut.m == 2);
  CHECK(cut.st == ExpPoint(q(7, 2), 6));
  CHECK(cut.A1 == PlanePoint(q(7, 4), Rational(3)));
  CHECK(en_point(cut.P, Direction(4, -1)) == en_point(p, Direction(4, -1)));
}

TEST_CASE("cut above the diagonal: case I and low multiplicity") {
  const RegularCorner c{PlanePoint(Rational(4), Rational(12)), Direction(4, -1), std::nullopt};
  const LaurentPoly r = P("x") * P("x*y^4 - 1").pow(3);
  CHECK_THROWS_AS(cut_above_diagonal(P("x^8*y^24 + x^2"), P("x^12*y^36 + x^3"), c), PreconditionFailed);
  // m = 2 does not divide the multiplicity 3 of z - 1.
  const LaurentPoly low = P("x^2") * P("x*y^4 - 1").pow(3) * P("x*y^4 + 1").pow(3);
  CHECK_THROWS(cut_above_diagonal(low, low * r, c));
}

TEST_CASE("no-F certificates") {
  const LaurentPoly unit = P(kUnitP);
  const NoFCertificate none = certify_no_F(unit, Direction(1, -2), 20);
  CHECK(none.solutions.empty());
  CHECK(none.statement.find("20") != std::string::npos);
  CHECK(certify_no_F(unit, Direction(1, -2), 0).solutions.empty());
  const NoFCertificate one = certify_no_F(P("x^3") * P("y - 2").pow(2), Direction(1, 0), 5);
  REQUIRE(one.solutions.size() == 1);
  CHECK(one.solutions[0] == P("-x*y + 2*x"));
  CHECK(one.verified);
  CHECK_THROWS_AS(certify_no_F(P("y + 1"), Direction(1, 0), 5), DegreeZero);
}

TEST_CASE("pipeline witness: first failure is the first bracket check") {
  PipelineState s = pipeline_witness(0);
  CHECK_FALSE(run_pipeline(s));
  REQUIRE(s.log.size() >= 2);
  CHECK(s.log[0].pass);
  const StageCheck* f = first_failure(s);
  REQUIRE(f != nullptr);
  CHECK(f->kind == CheckKind::bracket);
  CHECK(f->name == "bracket_constant");
  REQUIRE(find_check(s, "flip_pushforward") != nullptr);
  CHECK(find_check(s, "flip_pushforward")->pass);
}

TEST_CASE("pipeline audit runs") {
  for (int entry : {0, 3, 6}) {
    PipelineState s = pipeline_witness(entry);
    run_pipeline(s, PipelineOptions{true});
    for (const auto& r : s.log) {
      for (const auto& c : r.checks) {
        if (c.kind == CheckKind::unconditional || c.kind == CheckKind::derived) {
          CHECK_MESSAGE(c.pass, "entry ", entry, ": ", r.stage, " ", c.name, " ", c.detail);
        }
      }
    }
  }
  PipelineState s3 = pipeline_witness(3);
  run_pipeline(s3, PipelineOptions{true});
  for (const char* name : {"R3_shape", "hull_transform_P", "dir_pushforward_P", "lf_equivariance_P"}) {
    REQUIRE_MESSAGE(find_check(s3, name) != nullptr, name);
    CHECK_MESSAGE(find_check(s3, name)->pass, name);
  }
}

TEST_CASE("pipeline stages are deterministic") {
  PipelineState a = pipeline_witness(3);
  PipelineState b = a;
  const StageReport ra = run_stage(a, true);
  const StageReport rb = run_stage(b, true);
  CHECK(a.P == b.P);
  CHECK(a.Q == b.Q);
  REQUIRE(ra.checks.size() == rb.checks.size());
  for (std::size_t i = 0; i < ra.checks.size(); ++i) {
    CHECK(ra.checks[i].name == rb.checks[i].name);
    CHECK(ra.checks[i].pass == rb.checks[i].pass);
  }
}

TEST_CASE("stage 0 guard rejects wrong shapes") {
  try {
    b16_reduce(P("x"), P("y"), 4, 3);
    FAIL("expected AssumptionViolated");
  } catch (const AssumptionViolated& e) {
    CHECK(e.stage().rfind("0:", 0) == 0);
  }
  CHECK_THROWS_AS(b16_reduce(P(kUnitP), P(kUnitQ), 4, 3), AssumptionViolated);
}

TEST_CASE("b16_reduce names the first bracket check") {
  const PipelineState w = pipeline_witness(0);
  try {
    b16_reduce(w.P, w.Q, w.m, w.n);
    FAIL("expected AssumptionViolated");
  } catch (const AssumptionViolated& e) {
    CHECK(e.assertion() == "bracket_constant");
  }
}
