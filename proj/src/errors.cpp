#include "newton_shape/errors.hpp"

namespace nshape {

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorKind::InvalidDirection: return "InvalidDirection";
    case ErrorKind::OnDiagonal: return "OnDiagonal";
    case ErrorKind::MonomialInput: return "MonomialInput";
    case ErrorKind::NotAnEdge: return "NotAnEdge";
    case ErrorKind::AssertionFailure: return "AssertionFailure";
    case ErrorKind::NotHomogeneous: return "NotHomogeneous";
    case ErrorKind::UnsupportedDirection: return "UnsupportedDirection";
    case ErrorKind::BracketNonzero: return "BracketNonzero";
    case ErrorKind::BothDegreesZero: return "BothDegreesZero";
    case ErrorKind::RequiresExtensionField: return "RequiresExtensionField";
    case ErrorKind::NotProportional: return "NotProportional";
    case ErrorKind::DegreeZero: return "DegreeZero";
    case ErrorKind::PreconditionFailed: return "PreconditionFailed";
    case ErrorKind::DegenerateStart: return "DegenerateStart";
    case ErrorKind::NotInL: return "NotInL";
    case ErrorKind::NotInL1: return "NotInL1";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::NotTypeIICandidate: return "NotTypeIICandidate";
    case ErrorKind::NotCaseIII: return "NotCaseIII";
    case ErrorKind::RhoDoesNotDivideL: return "RhoDoesNotDivideL";
    case ErrorKind::IrrationalRoot: return "IrrationalRoot";
    case ErrorKind::MultiplicityTooLow: return "MultiplicityTooLow";
    case ErrorKind::AssumptionViolated: return "AssumptionViolated";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}

static std::string describe_parse(std::size_t offset, const std::vector<std::string>& expected,
                                  const std::string& found) {
  std::string msg = "at byte " + std::to_string(offset) + ": expected one of {";
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (i) msg += ", ";
    msg += expected[i];
  }
  msg += "}, found " + found;
  return msg;
}

ParseError::ParseError(std::size_t offset, std::vector<std::string> expected, const std::string& found)
    : Error(ErrorKind::ParseError, describe_parse(offset, expected, found)),
      offset_(offset),
      expected_(std::move(expected)) {}

AssumptionViolated::AssumptionViolated(std::string stage, std::string assertion, const std::string& detail)
    : Error(ErrorKind::AssumptionViolated, stage + ": " + assertion + (detail.empty() ? "" : " (" + detail + ")")),
      stage_(std::move(stage)),
      assertion_(std::move(assertion)) {}

}  // namespace nshape
