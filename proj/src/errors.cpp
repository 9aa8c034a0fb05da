#include "thermo/errors.hpp"

namespace thermo {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::StateMismatch: return "StateMismatch";
    case ErrorKind::NotProperSubsystem: return "NotProperSubsystem";
    case ErrorKind::SizeLimit: return "SizeLimit";
    case ErrorKind::NoReverseWitness: return "NoReverseWitness";
    case ErrorKind::Overlap: return "Overlap";
    case ErrorKind::NotCatalytic: return "NotCatalytic";
    case ErrorKind::NotWorkProcess: return "NotWorkProcess";
    case ErrorKind::DepthExceeded: return "DepthExceeded";
    case ErrorKind::Unreachable: return "Unreachable";
    case ErrorKind::PreconditionNotMet: return "PreconditionNotMet";
    case ErrorKind::SameReservoir: return "SameReservoir";
    case ErrorKind::NoTemperature: return "NoTemperature";
    case ErrorKind::ZeroHeat: return "ZeroHeat";
    case ErrorKind::NotCyclic: return "NotCyclic";
    case ErrorKind::UnassignedTemperature: return "UnassignedTemperature";
    case ErrorKind::OutOfDomain: return "OutOfDomain";
    case ErrorKind::ToleranceNotMet: return "ToleranceNotMet";
    case ErrorKind::PressureDecrease: return "PressureDecrease";
    case ErrorKind::OffIsotherm: return "OffIsotherm";
    case ErrorKind::NonPositiveScale: return "NonPositiveScale";
    case ErrorKind::IncompatibleBases: return "IncompatibleBases";
    case ErrorKind::OptimizerFailed: return "OptimizerFailed";
    case ErrorKind::DomainError: return "DomainError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace thermo
