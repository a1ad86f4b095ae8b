#include "shkit/error.hpp"

namespace shkit {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::NegativeEigenvalue: return "NegativeEigenvalue";
    case ErrorKind::NotPositive: return "NotPositive";
    case ErrorKind::ZeroMetric: return "ZeroMetric";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotCompatible: return "NotCompatible";
    case ErrorKind::UnknownBound: return "UnknownBound";
    case ErrorKind::UnknownIdentity: return "UnknownIdentity";
    case ErrorKind::ParamOutOfDomain: return "ParamOutOfDomain";
    case ErrorKind::PreconditionFailed: return "PreconditionFailed";
    case ErrorKind::IncompatibleOperandRoles: return "IncompatibleOperandRoles";
    case ErrorKind::BadRank: return "BadRank";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

}  // namespace shkit
