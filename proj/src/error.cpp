#include "cdt/error.hpp"

namespace cdt {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Domain: return "DomainError";
    case ErrorKind::Weight: return "WeightError";
    case ErrorKind::UnsupportedWeights: return "UnsupportedWeights";
    case ErrorKind::NonInvertibleDerivative: return "NonInvertibleDerivative";
    case ErrorKind::NonInvertibleRatio: return "NonInvertibleRatio";
    case ErrorKind::NonInvertibleGradient: return "NonInvertibleGradient";
    case ErrorKind::Order: return "OrderError";
    case ErrorKind::Convexity: return "ConvexityError";
    case ErrorKind::Derivative: return "DerivativeError";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::KindMismatch: return "KindMismatch";
    case ErrorKind::QuadratureFailure: return "QuadratureFailure";
    case ErrorKind::Dominance: return "DominanceError";
    case ErrorKind::Param: return "ParamError";
    case ErrorKind::DegenerateCluster: return "DegenerateCluster";
    case ErrorKind::Parse: return "ParseError";
  }
  return "Error";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

ParseError::ParseError(std::size_t offset, std::vector<std::string> expected,
                       const std::string& message)
    : Error(ErrorKind::Parse, message + " at offset " + std::to_string(offset)),
      offset_(offset),
      expected_(std::move(expected)) {}

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace cdt
