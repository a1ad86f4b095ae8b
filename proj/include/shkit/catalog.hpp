#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "shkit/block_operator.hpp"

namespace shkit {

enum class Direction { Upper, Lower, Comparison };

std::string_view to_string(Direction d) noexcept;

/// One registered inequality. For every direction the evaluated result is
/// arranged so that the claim reads lhs <= rhs.
struct BoundSpec {
  std::string id;
  std::vector<std::string> roles;
  bool uses_lambda = false;  // lambda in [0, 1]
  bool uses_sign = false;    // sign in {+1, -1}
  Direction direction = Direction::Upper;
  std::string statement;
  std::string precondition;  // empty when unconditional
};

const std::vector<BoundSpec>& registry();
/// Throws UnknownBound.
const BoundSpec& find_bound(std::string_view id);
std::vector<std::string> all_bound_ids();

struct BoundParams {
  std::optional<double> lambda;
  std::optional<int> sign;

  bool operator==(const BoundParams&) const = default;
};

struct BoundResult {
  std::string bound_id;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // rhs - lhs
  bool holds = false;  // slack >= -tol (1 + |rhs|)
  std::string operand_digest;
  BoundParams params;  // only the parameters the bound consumes

  bool operator==(const BoundResult&) const = default;
};

/// FNV-1a over the metric, operand entries and parameters, as 16 hex digits.
std::string operand_digest(const MetricSpace& space, std::span<const CompatibleOperator> operands,
                           const BoundParams& params);

/// Evaluates registered bounds on one metric space. A-numerical radii, norms
/// and spectral radii are memoised per operator, so evaluating the whole
/// registry on one operand tuple reuses shared subterms. Results are
/// identical to a fresh evaluator's; instances are not thread-safe.
class BoundEvaluator {
 public:
  explicit BoundEvaluator(const MetricSpace& space, double tol = kIdentityTol);
  explicit BoundEvaluator(Lifting lifting, double tol = kIdentityTol);

  const Lifting& lifting() const noexcept { return lifting_; }
  double tol() const noexcept { return tol_; }

  /// Throws UnknownBound, NotCompatible, ParamOutOfDomain, PreconditionFailed,
  /// DimensionMismatch (wrong operand count or size).
  BoundResult evaluate(std::string_view id, std::span<const ComplexMatrix> operands,
                       const BoundParams& params = {});
  BoundResult evaluate(std::string_view id, std::span<const CompatibleOperator> operands,
                       const BoundParams& params = {});

  double omega(const CompatibleOperator& t);
  double norm(const CompatibleOperator& t);
  double spectral(const CompatibleOperator& t);
  double omega(const BlockOperator& t) { return omega(t.op()); }
  double norm(const BlockOperator& t) { return norm(t.op()); }
  double spectral(const BlockOperator& t) { return spectral(t.op()); }

 private:
  double memo(char kind, const CompatibleOperator& t);

  Lifting lifting_;
  double tol_;
  std::unordered_map<std::string, double> cache_;
};

BoundResult evaluate_bound(const MetricSpace& space, std::string_view id,
                           std::span<const ComplexMatrix> operands, const BoundParams& params = {},
                           double tol = kIdentityTol);

/// Evaluates bounds sharing one operand-role signature, sorted by rhs
/// ascending with ties broken by id. Throws IncompatibleOperandRoles.
std::vector<BoundResult> compare_bounds(const MetricSpace& space, std::span<const std::string> ids,
                                        std::span<const ComplexMatrix> operands,
                                        const BoundParams& params = {}, double tol = kIdentityTol);

}  // namespace shkit
