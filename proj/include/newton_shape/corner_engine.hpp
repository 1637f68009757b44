#pragma once

#include <optional>
#include <string>
#include <vector>

#include "newton_shape/homogeneous.hpp"

namespace nshape {

struct LatticePoint {
  long x = 0;
  long y = 0;
  friend bool operator==(const LatticePoint& a, const LatticePoint& b) { return a.x == b.x && a.y == b.y; }
  friend bool operator<(const LatticePoint& a, const LatticePoint& b) {
    return a.x != b.x ? a.x < b.x : a.y < b.y;
  }
};

struct RegularCorner {
  PlanePoint A;  // (a/l, b)
  Direction d;
  std::optional<CaseLabel> case_label;
};

struct StartingTriple {
  PlanePoint A0;
  PlanePoint A0prime;
  Direction d;
};

struct PairCorners {
  std::vector<RegularCorner> corners;  // increasing direction inside I
  std::vector<Direction> A_of_P;
  std::optional<StartingTriple> starting;
};

// Support conditions of a regular corner for every d in Dir(P) cap I; no Jacobian check.
PairCorners regular_corners_of_pair(const LaurentPoly& p, const LaurentPoly& q, long m, long n);
std::vector<Direction> a_set(const LaurentPoly& p);
CaseLabel classify_corner(const LaurentPoly& p, const LaurentPoly& q, const RegularCorner& c);

struct MnPairCheck {
  bool is_mn_pair = false;
  bool is_standard = false;
  std::vector<std::string> failures;
};
// (m,n)-pair and standard-pair predicates.
MnPairCheck check_mn_pair(const LaurentPoly& p, const LaurentPoly& q, long m, long n);

struct FilterVerdict {
  std::string filter;
  bool pass = true;
  std::string detail;
};

// One (A0', gamma) choice of a candidate.
struct CandidateOption {
  LatticePoint A0prime;
  long gamma = 0;
  PlanePoint A1;
  long lprime = 1;
  Rational lprime_minus_ab;
  std::vector<FilterVerdict> verdicts;
  bool survives = false;
};

struct CandidateCorner {
  LatticePoint A0;
  LatticePoint f;
  Rational mu;
  long q0 = 1;
  Direction d;
  std::vector<LatticePoint> A0prime_options;
  long dgcd = 1;
  std::vector<long> gamma_options;
  std::vector<CandidateOption> options;
  std::vector<FilterVerdict> verdicts;  // row-level filters
  bool survives = false;
};

enum class FilterProfile { table1, full };
const char* profile_name(FilterProfile p);

// Rows ordered by (u, v, f1). threads <= 0 reads NEWTON_SHAPE_THREADS, defaulting to the hardware count.
std::vector<CandidateCorner> enumerate_candidates(long sum_min, long sum_max, FilterProfile profile,
                                                  int threads = 0);

// l' - a/b > 1 or gcd(a, b) > 1, for A1 = (a/l', b).
bool check_condition8(const PlanePoint& A1, long lprime);

// Fails iff d = (2,-1) and (v_d(A0) <= 3 or A0 = (8,12)).
bool filter_impossibles(const CandidateCorner& c);

struct MuAttempt {
  long mu = 0;
  std::optional<Direction> d1;
  long reduced_rho = 0;  // rho1 / gcd(rho1, l')
  bool admissible = false;
  std::vector<PlanePoint> forced_corners;
  std::string outcome;
};

struct TypeIIResult {
  long dbar = 1;
  Integer mu_bound;
  std::vector<MuAttempt> attempts;
  bool pass = false;
};

// Type II constraints at A1 = (a/l', b), recursing to the forced corners.
// Throws NotTypeIICandidate if gcd(a, b) = 1.
TypeIIResult filter_typeII_mu(const PlanePoint& A1, long lprime);

struct ChainCandidate {
  LatticePoint A1;
  Direction d0;
  Direction d1;
  bool pass = false;
  std::string reason;
};

struct ChainReport {
  std::vector<Direction> edge_directions;  // admissible (rho, sigma) of the A0 edge
  std::vector<ChainCandidate> candidates;
  bool last_corner = true;
  std::string summary;
};

// Further corners A1 beyond A0 consistent with the divisibility constraints and the absence of
// vertical edges when u = q0.
ChainReport chain_filter(const LatticePoint& A0, long q0, long sum_bound);

// Primitive corners (u,v) with u + v <= sum_bound surviving the full ladder, ascending.
std::vector<LatticePoint> xlist(long sum_bound, int threads = 0);

// The 23 pairs listed for B <= 50.
const std::vector<LatticePoint>& reference_x_list();

}  // namespace nshape
