// Prints one PASS/FAIL line per acceptance criterion.
#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include "../tests/property_suite.hpp"
#include "newton_shape/corner_engine.hpp"
#include "newton_shape/errors.hpp"
#include "newton_shape/io.hpp"
#include "newton_shape/pipeline.hpp"

using namespace nshape;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream note;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) note << what;
      pass = false;
    }
  }
};

LatticePoint lp(long x, long y) { return LatticePoint{x, y}; }
PlanePoint pp(long an, long ad, long b) { return PlanePoint(make_rational(an, ad), Rational(b)); }

struct Row {
  LatticePoint A0, f;
  Direction d;
};

void check_rows(Outcome& o, const std::vector<CandidateCorner>& rows, const std::vector<Row>& want) {
  o.require(rows.size() == want.size(), std::to_string(rows.size()) + " rows");
  for (std::size_t i = 0; o.pass && i < want.size(); ++i) {
    o.require(rows[i].A0 == want[i].A0 && rows[i].f == want[i].f && rows[i].d == want[i].d,
              "row " + std::to_string(i) + " differs");
  }
}

void criterion1(Outcome& o) {
  const auto rows = enumerate_candidates(3, 15, FilterProfile::table1);
  check_rows(o, rows,
             {{lp(3, 6), lp(2, 4), Direction(3, -1)},  {lp(3, 9), lp(2, 6), Direction(5, -1)},
              {lp(3, 12), lp(2, 8), Direction(7, -1)}, {lp(4, 6), lp(2, 3), Direction(2, -1)},
              {lp(4, 8), lp(2, 4), Direction(3, -1)},  {lp(4, 8), lp(3, 6), Direction(5, -2)},
              {lp(4, 10), lp(2, 5), Direction(4, -1)}, {lp(5, 10), lp(2, 4), Direction(3, -1)},
              {lp(5, 10), lp(3, 6), Direction(5, -2)}, {lp(5, 10), lp(4, 8), Direction(7, -3)},
              {lp(6, 8), lp(3, 4), Direction(3, -2)},  {lp(6, 9), lp(2, 3), Direction(2, -1)},
              {lp(6, 9), lp(4, 6), Direction(5, -3)}});
  if (!o.pass) return;
  struct With {
    std::size_t row;
    LatticePoint a0p;
    long gamma;
    PlanePoint A1;
  };
  const std::vector<With> with = {{0, lp(1, 0), 2, pp(5, 3, 2)},
                                  {3, lp(1, 0), 3, pp(5, 2, 3)},
                                  {7, lp(2, 1), 3, pp(8, 3, 3)},
                                  {8, lp(1, 0), 2, pp(9, 5, 2)},
                                  {11, lp(2, 1), 4, pp(7, 2, 4)}};
  std::size_t k = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& c = rows[i];
    if (k < with.size() && with[k].row == i) {
      const auto& w = with[k++];
      o.require(c.A0prime_options == std::vector<LatticePoint>{w.a0p} && c.dgcd == 1 &&
                    c.gamma_options == std::vector<long>{w.gamma} && c.options.size() == 1 &&
                    c.options[0].A1 == w.A1,
                "row " + std::to_string(i) + " A0'/gamma/A1 differ");
    } else {
      o.require(c.A0prime_options.empty(), "row " + std::to_string(i) + " has an A0'");
    }
    o.require(!c.survives, "row " + std::to_string(i) + " survives");
  }
  o.note << "13 rows, 5 with A0', 0 survivors";
}

void criterion2(Outcome& o) {
  const auto rows = enumerate_candidates(16, 20, FilterProfile::full);
  check_rows(o, rows,
             {{lp(4, 12), lp(2, 6), Direction(5, -1)},  {lp(4, 12), lp(3, 9), Direction(4, -1)},
              {lp(5, 15), lp(2, 6), Direction(5, -1)},  {lp(5, 15), lp(3, 9), Direction(4, -1)},
              {lp(5, 15), lp(4, 12), Direction(11, -3)}, {lp(6, 12), lp(2, 4), Direction(3, -1)},
              {lp(6, 12), lp(3, 6), Direction(5, -2)},  {lp(6, 12), lp(4, 8), Direction(7, -3)},
              {lp(6, 12), lp(5, 10), Direction(9, -4)}, {lp(8, 12), lp(2, 3), Direction(2, -1)},
              {lp(8, 12), lp(4, 6), Direction(5, -3)},  {lp(8, 12), lp(6, 9), Direction(8, -5)}});
  if (!o.pass) return;
  const std::vector<std::vector<LatticePoint>> a0p = {{}, {lp(1, 0)}, {lp(2, 0)}, {}, {}, {lp(2, 0)},
                                                      {}, {},         {},         {lp(2, 0), lp(3, 2)}, {}, {}};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    o.require(rows[i].A0prime_options == a0p[i], "row " + std::to_string(i) + " A0' differs");
  }
  bool impossible = false;
  for (const auto& v : rows[9].verdicts) impossible = impossible || (v.filter == "impossibles" && !v.pass);
  o.require(impossible && !rows[9].survives, "(8,12)/(2,-1) not eliminated by impossibles");
  struct T3 {
    std::size_t row;
    long d, gamma;
    PlanePoint A1;
    Rational gap;
  };
  const std::vector<T3> t3 = {{1, 2, 3, pp(7, 4, 3), make_rational(5, 3)},
                              {2, 1, 3, pp(13, 5, 3), make_rational(2, 3)},
                              {5, 1, 4, pp(10, 3, 4), make_rational(1, 2)}};
  for (const auto& t : t3) {
    const auto& c = rows[t.row];
    bool found = false;
    for (const auto& opt : c.options) {
      found = found || (opt.gamma == t.gamma && opt.A1 == t.A1 && opt.lprime_minus_ab == t.gap);
    }
    o.require(c.dgcd == t.d && found, "gamma/A1 row for " + std::to_string(c.A0.x) + "," + std::to_string(c.A0.y));
  }
  std::size_t survivors = 0;
  for (const auto& c : rows) {
    if (!c.survives) continue;
    ++survivors;
    bool gamma3 = false;
    for (const auto& opt : c.options) gamma3 = gamma3 || (opt.survives && opt.gamma == 3);
    o.require(c.A0 == lp(4, 12) && c.d == Direction(4, -1) && c.f == lp(3, 9) && gamma3, "unexpected survivor");
  }
  o.require(survivors == 1, std::to_string(survivors) + " survivors");
  o.note << "12 rows, (2,-1) row eliminated, 3 rows past condition (8), survivor (4,12)/(4,-1) gamma 3";
}

void criterion3(Outcome& o) {
  const auto s = xlist(50);
  const auto& ref = reference_x_list();
  std::size_t extras = 0;
  std::string extra_text;
  for (const auto& p : s) {
    if (std::find(ref.begin(), ref.end(), p) == ref.end()) {
      ++extras;
      extra_text += " (" + std::to_string(p.x) + "," + std::to_string(p.y) + ")";
    }
  }
  for (const auto& p : ref) {
    o.require(std::find(s.begin(), s.end(), p) != s.end(),
              "missing (" + std::to_string(p.x) + "," + std::to_string(p.y) + ")");
  }
  o.note << s.size() << " pairs, reference set of " << ref.size() << " contained, " << extras << " extra:" << extra_text;
}

void criterion4(Outcome& o) {
  const ChainReport r = chain_filter(lp(4, 12), 4, 20);
  o.require(r.candidates.size() == 1 && r.candidates[0].A1 == lp(4, 16) && !r.candidates[0].pass &&
                r.candidates[0].reason.find("vertical edge") != std::string::npos,
            "extension candidate");
  o.require(r.last_corner && r.summary.find("last corner") != std::string::npos, "not reported as last corner");
  o.note << r.summary;
}

const LaurentPoly& unit_p() {
  static const LaurentPoly p = parse_poly("x^2*y + x^6*y^2 + 6*x^8*y^3 + 9*x^10*y^4");
  return p;
}

void criterion5(Outcome& o) {
  const LaurentPoly q = parse_poly(
      "x^-1 + 2*x^3*y + 18*x^5*y^2 + 36*x^7*y^3 + 8*x^9*y^3 + 72*x^11*y^4 + 216*x^13*y^5 + 216*x^15*y^6");
  const LaurentPoly b = bracket(unit_p(), q);
  o.require(b == LaurentPoly::constant(1), "[P,Q] = " + render_poly(b));
  o.require(v_degree(unit_p(), Direction(1, -2)) == DegreeValue(Rational(2)), "v_{1,-2}(P) != 2");
  o.note << "[P,Q] = " << render_poly(b) << ", v_{1,-2}(P) = 2";
}

void criterion6(Outcome& o) {
  const NoFCertificate none = certify_no_F(unit_p(), Direction(1, -2), 20);
  o.require(none.solutions.empty(), "unexpected F for the unit pair");
  const LaurentPoly control = parse_poly("x^3*y^2 - 4*x^3*y + 4*x^3");
  const NoFCertificate one = certify_no_F(control, Direction(1, 0), 20);
  o.require(one.solutions.size() == 1, std::to_string(one.solutions.size()) + " control solutions");
  if (o.pass) {
    const LaurentPoly& f = one.solutions[0];
    o.require(bracket(f, one.leading) == one.leading, "control F fails [F, l] = l");
    o.note << none.statement << "; control F = " << render_poly(f);
  }
}

void criterion7(Outcome& o) {
  std::uint64_t seed = 20261016;
  for (char id = 'a'; id <= 'g'; ++id) {
    const auto r = props::run_suite(id, 1000, seed++);
    o.require(r.failures == 0 && r.cases >= 1000,
              std::string("(") + id + ") " + std::to_string(r.failures) + " failures: " + r.first_failure);
  }
  o.note << "7 suites x 1000 cases";
}

// Every check before the first failure passes, and the first failure is the first bracket check.
void criterion8(Outcome& o) {
  PipelineState s = pipeline_witness(0);
  const bool ok = run_pipeline(s);
  o.require(!ok, "witness passed every check");
  const StageCheck* first_bracket = nullptr;
  const StageCheck* first_fail = nullptr;
  std::string where;
  for (const auto& r : s.log) {
    for (const auto& c : r.checks) {
      if (!first_bracket && c.kind == CheckKind::bracket) first_bracket = &c;
      if (!first_fail && !c.pass) {
        first_fail = &c;
        where = std::to_string(r.index) + ":" + r.stage;
      }
    }
  }
  o.require(first_fail && first_fail == first_bracket, "first failure is not the first bracket check");
  try {
    b16_reduce(pipeline_witness(0).P, pipeline_witness(0).Q, 4, 3);
    o.require(false, "b16_reduce accepted the witness");
  } catch (const AssumptionViolated& e) {
    o.require(first_fail && e.assertion() == first_fail->name, "b16_reduce names " + e.assertion());
  }

  // Audit runs from each entry stage: no unconditional or derived check may fail.
  std::vector<std::string> seen;
  for (int entry : {0, 3, 6}) {
    PipelineState w = pipeline_witness(entry);
    PipelineOptions opts;
    opts.audit = true;
    run_pipeline(w, opts);
    for (const auto& r : w.log) {
      for (const auto& c : r.checks) {
        if (c.kind == CheckKind::unconditional || c.kind == CheckKind::derived) {
          o.require(c.pass, "entry " + std::to_string(entry) + " stage " + r.stage + ": " + c.name);
        }
        if (c.pass) seen.push_back(c.name);
      }
    }
  }
  for (const auto& name : {"flip_pushforward", "R3_shape", "hull_transform_P", "dir_pushforward_P", "lf_equivariance_P"}) {
    o.require(std::find(seen.begin(), seen.end(), name) != seen.end(), std::string(name) + " never ran");
  }

  bool wrong_ok = true;
  const LaurentPoly q = parse_poly(
      "x^-1 + 2*x^3*y + 18*x^5*y^2 + 36*x^7*y^3 + 8*x^9*y^3 + 72*x^11*y^4 + 216*x^13*y^5 + 216*x^15*y^6");
  for (const auto& [p0, q0] : {std::pair{LaurentPoly::x(), LaurentPoly::y()}, std::pair{unit_p(), q}}) {
    try {
      b16_reduce(p0, q0, 4, 3);
      wrong_ok = false;
    } catch (const AssumptionViolated& e) {
      wrong_ok = wrong_ok && e.stage().rfind("0:", 0) == 0;
    }
  }
  o.require(wrong_ok, "wrong-shaped input not rejected at stage 0");
  if (first_fail) o.note << "first failure " << where << " " << first_fail->name << " (bracket)";
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria = {
      {"candidates with sums 3-15", criterion1},  {"candidates with sums 16-20", criterion2},
      {"admissible corner list, bound 50", criterion3}, {"chain elimination of (4,16)", criterion4},
      {"bracket regression", criterion5},          {"no-F certificate", criterion6},
      {"property suites", criterion7},             {"pipeline stage checks", criterion8}};
  const double limits[] = {1.0, 1.0, 10.0, 0.1, 0, 0, 0, 0};
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (limits[i] > 0 && secs >= limits[i]) o.require(false, "runtime over limit");
    failures += o.pass ? 0 : 1;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first << " [" << secs << " s] "
              << o.note.str() << "\n";
  }
  return failures == 0 ? 0 : 1;
}
