#include "gjpo/error.hpp"

namespace gjpo {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Dimension: return "DimensionError";
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::Resource: return "ResourceError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::LeafInitialState: return "LeafInitialState";
    case ErrorKind::NonStandardFunction: return "NonStandardFunction";
    case ErrorKind::NonsingularRequired: return "NonsingularRequired";
    case ErrorKind::ComplexityTooLow: return "ComplexityTooLow";
    case ErrorKind::InitialStateOffRootCycle: return "InitialStateOffRootCycle";
    case ErrorKind::InvalidTree: return "InvalidTree";
    case ErrorKind::NoRootedTrees: return "NoRootedTrees";
  }
  return "Error";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace gjpo
