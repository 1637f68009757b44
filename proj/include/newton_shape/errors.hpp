#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace nshape {

enum class ErrorKind {
  ZeroPolynomial,
  InvalidDirection,
  OnDiagonal,
  MonomialInput,
  NotAnEdge,
  AssertionFailure,
  NotHomogeneous,
  UnsupportedDirection,
  BracketNonzero,
  BothDegreesZero,
  RequiresExtensionField,
  NotProportional,
  DegreeZero,
  PreconditionFailed,
  DegenerateStart,
  NotInL,
  NotInL1,
  BudgetExceeded,
  NotTypeIICandidate,
  NotCaseIII,
  RhoDoesNotDivideL,
  IrrationalRoot,
  MultiplicityTooLow,
  AssumptionViolated,
  ParseError,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

template <ErrorKind K>
class ErrorOf : public Error {
 public:
  explicit ErrorOf(const std::string& what) : Error(K, what) {}
};

using ZeroPolynomial = ErrorOf<ErrorKind::ZeroPolynomial>;
using InvalidDirection = ErrorOf<ErrorKind::InvalidDirection>;
using OnDiagonal = ErrorOf<ErrorKind::OnDiagonal>;
using MonomialInput = ErrorOf<ErrorKind::MonomialInput>;
using NotAnEdge = ErrorOf<ErrorKind::NotAnEdge>;
using AssertionFailure = ErrorOf<ErrorKind::AssertionFailure>;
using NotHomogeneous = ErrorOf<ErrorKind::NotHomogeneous>;
using UnsupportedDirection = ErrorOf<ErrorKind::UnsupportedDirection>;
using BracketNonzero = ErrorOf<ErrorKind::BracketNonzero>;
using BothDegreesZero = ErrorOf<ErrorKind::BothDegreesZero>;
using RequiresExtensionField = ErrorOf<ErrorKind::RequiresExtensionField>;
using NotProportional = ErrorOf<ErrorKind::NotProportional>;
using DegreeZero = ErrorOf<ErrorKind::DegreeZero>;
using PreconditionFailed = ErrorOf<ErrorKind::PreconditionFailed>;
using DegenerateStart = ErrorOf<ErrorKind::DegenerateStart>;
using NotInL = ErrorOf<ErrorKind::NotInL>;
using NotInL1 = ErrorOf<ErrorKind::NotInL1>;
using BudgetExceeded = ErrorOf<ErrorKind::BudgetExceeded>;
using NotTypeIICandidate = ErrorOf<ErrorKind::NotTypeIICandidate>;
using NotCaseIII = ErrorOf<ErrorKind::NotCaseIII>;
using RhoDoesNotDivideL = ErrorOf<ErrorKind::RhoDoesNotDivideL>;
using IrrationalRoot = ErrorOf<ErrorKind::IrrationalRoot>;
using MultiplicityTooLow = ErrorOf<ErrorKind::MultiplicityTooLow>;

// Parse failure at a byte offset, with the set of tokens that would have been accepted there.
class ParseError : public Error {
 public:
  ParseError(std::size_t offset, std::vector<std::string> expected, const std::string& found);
  std::size_t offset() const noexcept { return offset_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

class AssumptionViolated : public Error {
 public:
  AssumptionViolated(std::string stage, std::string assertion, const std::string& detail);
  const std::string& stage() const noexcept { return stage_; }
  const std::string& assertion() const noexcept { return assertion_; }

 private:
  std::string stage_;
  std::string assertion_;
};

}  // namespace nshape
