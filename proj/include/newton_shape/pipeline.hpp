#pragma once

#include <array>
#include <string>
#include <vector>

#include "newton_shape/corner_engine.hpp"
#include "newton_shape/morphisms.hpp"

namespace nshape {

struct CaseIIIShift {
  LaurentPoly P;
  LaurentPoly Q;
  Rational lambda;
  ElementaryAuto phi;  // y -> y + lambda x^{sigma/rho}
  Direction next_direction;  // Pred of phi(P) at the corner direction
};

// Throws NotCaseIII, RhoDoesNotDivideL, IrrationalRoot, AssertionFailure.
CaseIIIShift case_iii_shift(const LaurentPoly& p, const LaurentPoly& q, const RegularCorner& c);

struct DiagonalCut {
  LaurentPoly P;
  LaurentPoly Q;
  Rational lambda;
  long m = 1;          // en_d(P) = m A
  long m_lambda = 0;   // multiplicity of z - lambda
  ElementaryAuto phi;
  ExpPoint st;         // st_d(phi P)
  PlanePoint A1;       // st / m
};

// The root of maximal multiplicity is used, the largest one on ties.
// Throws PreconditionFailed unless the corner is of case II, then IrrationalRoot, MultiplicityTooLow, AssertionFailure.
DiagonalCut cut_above_diagonal(const LaurentPoly& p, const LaurentPoly& q, const RegularCorner& c);

struct NoFCertificate {
  Direction d;
  long max_ydeg = 0;
  LaurentPoly leading;  // l_d(P)
  std::vector<LaurentPoly> solutions;
  bool verified = true;  // every solution satisfies [F, l_d(P)] = l_d(P)
  std::string statement;
};

// Throws DegreeZero when v_d(P) = 0, plus solve_F's errors.
NoFCertificate certify_no_F(const LaurentPoly& p, const Direction& d, long max_ydeg);

enum class CheckKind {
  guard,          // input shape required by the stage
  unconditional,  // morphism identities that hold for any input
  derived,        // consequences of the facts established by earlier stages
  bracket,        // needs [P,Q] to be a Jacobian-type bracket at this stage
};
const char* check_kind_name(CheckKind k);

struct StageCheck {
  std::string name;
  CheckKind kind = CheckKind::unconditional;
  bool pass = true;
  std::string detail;
};

struct StageReport {
  int index = 0;
  std::string stage;
  std::vector<StageCheck> checks;
  bool pass = true;
  bool blocked = false;  // the stage could not compute its output
  std::string diagnostic;
};

inline constexpr int kStageCount = 7;
const char* stage_name(int index);

struct PipelineState {
  LaurentPoly P;
  LaurentPoly Q;
  long m = 1;
  long n = 1;
  long j = 0;  // m = 3j+1, n = 2j+1 once stage 2 has passed
  Rational lambda0, lambda1;     // R0 = y(x^4 y - lambda0)^3, R1 = x(x^2 y - lambda1)
  Rational lambda;               // R = x^8 y^3 (x^4 y + lambda), R3 = y^3 (y + lambda x)
  std::array<Rational, 4> mu{};  // shift coefficients mu0..mu3
  int shift_count = 0;
  int next_stage = 0;
  std::vector<StageReport> log;
};

PipelineState make_pipeline_state(const LaurentPoly& p, const LaurentPoly& q, long m, long n);

// Runs the stage state.next_stage and appends its report. Without audit the stage stops at the
// first failed check; with audit only a failed bracket check is recorded and skipped.
const StageReport& run_stage(PipelineState& state, bool audit = false);

struct PipelineOptions {
  bool audit = false;
  int last_stage = kStageCount - 1;
};

// Runs stages until last_stage, a failure (or a blocked stage under audit). True iff every check passed.
bool run_pipeline(PipelineState& state, const PipelineOptions& opts = {});

// Full run from stage 0. Throws AssumptionViolated naming the stage and the first failed check.
PipelineState b16_reduce(const LaurentPoly& p, const LaurentPoly& q, long m, long n);

// Pairs with the exact support and leading-form shape expected on entry to stage 0, 3 or 6,
// built from powers of the stage's R polynomials. They are not Jacobian pairs.
PipelineState pipeline_witness(int entry_stage, long m = 4, long n = 3);

}  // namespace nshape
