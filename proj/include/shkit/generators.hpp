#pragma once

#include <cstdint>
#include <random>

#include "shkit/metric_space.hpp"

namespace shkit {

/// splitmix64 finaliser.
std::uint64_t mix64(std::uint64_t x) noexcept;
/// Seed for sub-stream `index` of `master`; independent of evaluation order.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept;

using Rng = std::mt19937_64;

/// Entries with independent standard normal real and imaginary parts.
ComplexMatrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng);
/// Q factor of a complex Gaussian matrix.
ComplexMatrix random_unitary(Eigen::Index n, Rng& rng);

/// PSD metric of order n and pseudo-rank r. Range eigenvalues are
/// log-uniform in [1e-2, 1e2], or [1e-4, 1e4] when `stress` is set.
/// Throws BadRank unless 1 <= r <= n.
MetricSpace gen_metric(std::size_t n, std::size_t r, std::uint64_t seed, bool stress = false);

/// V (X 0; Y Z) V* in the eigenbasis V = [V_r V_0] of the metric.
CompatibleOperator gen_compatible(const MetricSpace& space, std::uint64_t seed);

/// V_r L^{-1/2} W L^{1/2} V_r* + V_0 Z V_0* with W unitary; its compression is W.
CompatibleOperator gen_a_unitary(const MetricSpace& space, std::uint64_t seed);

}  // namespace shkit
