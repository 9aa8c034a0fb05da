#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace thermo {

enum class ErrorKind {
  InvalidArgument,
  StateMismatch,
  NotProperSubsystem,
  SizeLimit,
  NoReverseWitness,
  Overlap,
  NotCatalytic,
  NotWorkProcess,
  DepthExceeded,
  Unreachable,
  PreconditionNotMet,
  SameReservoir,
  NoTemperature,
  ZeroHeat,
  NotCyclic,
  UnassignedTemperature,
  OutOfDomain,
  ToleranceNotMet,
  PressureDecrease,
  OffIsotherm,
  NonPositiveScale,
  IncompatibleBases,
  OptimizerFailed,
  DomainError,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Every failure raised by the library carries a kind so callers (and tests)
// can dispatch on it without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

}  // namespace thermo
