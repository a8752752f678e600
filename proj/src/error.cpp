#include "gnewton/error.hpp"

namespace gnewton {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::NotSquare: return "NotSquare";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NonFiniteEvaluation: return "NonFiniteEvaluation";
    case ErrorKind::UnknownProblem: return "UnknownProblem";
    case ErrorKind::UnknownGeneralizer: return "UnknownGeneralizer";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ArityError: return "ArityError";
    case ErrorKind::UnknownIdentifier: return "UnknownIdentifier";
    case ErrorKind::InvalidStep: return "InvalidStep";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::EmptyWindow: return "EmptyWindow";
    case ErrorKind::NotFixedPoint: return "NotFixedPoint";
    case ErrorKind::NoSuccessfulStarts: return "NoSuccessfulStarts";
    case ErrorKind::ZeroSuccessRate: return "ZeroSuccessRate";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace gnewton
