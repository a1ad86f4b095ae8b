#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "shkit/metric_space.hpp"

namespace shkit {

/// Names of the exact identities checked by the harness.
const std::vector<std::string>& identity_ids();

/// Throws UnknownIdentity.
void require_identity(std::string_view id);

/// Draws fresh operands on `space` from `seed` and returns the largest
/// relative residual |lhs - rhs| / (1 + |rhs|) over the sub-checks of `id`.
/// p4200 ignores the metric and checks a nonnegative real matrix instead.
double identity_residual(std::string_view id, const MetricSpace& space, std::uint64_t seed);

/// sup over theta of ||Re_A(e^{i theta} T)||_A (or Im_A), computed directly
/// from re_part/im_part and a_op_norm: a grid over [0, pi) followed by a
/// golden-section refinement of the best local maxima.
double zm_supremum(const CompatibleOperator& t, bool imaginary, int grid_points = 128);

}  // namespace shkit
