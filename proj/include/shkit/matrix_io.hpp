#pragma once

#include <filesystem>
#include <span>
#include <string>

#include <json.hpp>

#include "shkit/harness.hpp"

namespace shkit {

/// {"rows": n, "cols": m, "data": [[[re, im], ...], ...]}, row-major.
nlohmann::json matrix_to_json(const ComplexMatrix& m);
/// Throws Parse on shape or type errors, NonFinite on NaN/inf entries.
ComplexMatrix matrix_from_json(const nlohmann::json& j);

ComplexMatrix parse_matrix(std::string_view text);
ComplexMatrix read_matrix_file(const std::filesystem::path& path);
/// Pretty-printed MatrixFile with a trailing newline. Doubles round-trip exactly.
std::string format_matrix(const ComplexMatrix& m);

nlohmann::json params_to_json(const BoundParams& p);
nlohmann::json report_to_json(const VerificationReport& report);
std::string format_report(const VerificationReport& report);

/// RFC 4180 with header bound_id,lhs,rhs,slack; values with 17 significant digits.
std::string results_to_csv(std::span<const BoundResult> results);

/// 12 significant digits, trailing zeros kept, '.' separator.
std::string format_scalar(double value);

}  // namespace shkit
