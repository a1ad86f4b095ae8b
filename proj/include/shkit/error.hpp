#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace shkit {

enum class ErrorKind {
  NonFinite,
  NotHermitian,
  NoConvergence,
  NegativeEigenvalue,
  NotPositive,
  ZeroMetric,
  DimensionMismatch,
  NotCompatible,
  UnknownBound,
  UnknownIdentity,
  ParamOutOfDomain,
  PreconditionFailed,
  IncompatibleOperandRoles,
  BadRank,
  Parse,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries a kind so callers (and the
/// CLI exit-code mapping) can branch without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace shkit
