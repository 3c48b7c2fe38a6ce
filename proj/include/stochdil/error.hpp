#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace stochdil {

enum class ErrorKind {
  NegativeEntry,
  NotSquare,
  NotStochastic,
  NotBiStochastic,
  DimensionMismatch,
  ModeMismatch,
  NotExact,
  InvalidProbVec,
  InvalidPartition,
  InvalidRightInverse,
  NotFixedPoint,
  ZeroComponent,
  DimensionTooSmall,
  IndexOutOfRange,
  IncompleteKrausSet,
  CompletionFailure,
  AnchorOutsideRegion,
  NoPerfectMatching,
  NonPositiveEntry,
  NotConverged,
  ParameterOutOfRange,
  Parse,
  DemoMismatch,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Every library failure is reported through this type; `kind()` lets callers
// (the CLI, the Python bindings) map failures without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace stochdil
