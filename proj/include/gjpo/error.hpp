#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gjpo {

enum class ErrorKind {
  Dimension,
  Parse,
  Resource,
  InvalidArgument,
  LeafInitialState,
  NonStandardFunction,
  NonsingularRequired,
  ComplexityTooLow,
  InitialStateOffRootCycle,
  InvalidTree,
  NoRootedTrees,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Every failure the library reports carries a kind so that frontends can map
// it onto exit codes or exception types without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

}  // namespace gjpo
