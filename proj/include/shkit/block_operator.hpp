#pragma once

#include <array>
#include <string>
#include <vector>

#include "shkit/metric_space.hpp"

namespace shkit {

/// diag(A, A) on H + H, built from scratch through make_space.
MetricSpace lift_metric(const MetricSpace& space);

/// Block (i, j) occupies rows i*n..(i+1)*n and columns j*n..(j+1)*n.
ComplexMatrix assemble_matrix(const ComplexMatrix& p, const ComplexMatrix& q,
                              const ComplexMatrix& r, const ComplexMatrix& s);
std::array<ComplexMatrix, 4> dissect_matrix(const ComplexMatrix& m);

/// A 2x2 operator matrix (P Q; R S) with A-compatible blocks, acting on the
/// lifted space.
class BlockOperator {
 public:
  const MetricSpace& base_space() const noexcept { return blocks_[0].space(); }
  const MetricSpace& lifted_space() const noexcept { return assembled_.space(); }
  const CompatibleOperator& p() const noexcept { return blocks_[0]; }
  const CompatibleOperator& q() const noexcept { return blocks_[1]; }
  const CompatibleOperator& r() const noexcept { return blocks_[2]; }
  const CompatibleOperator& s() const noexcept { return blocks_[3]; }
  const CompatibleOperator& block(int i, int j) const { return blocks_.at(static_cast<std::size_t>(2 * i + j)); }
  /// The assembled 2n x 2n operator, compatible for the lifted metric.
  const CompatibleOperator& op() const noexcept { return assembled_; }

 private:
  friend class Lifting;
  BlockOperator(std::array<CompatibleOperator, 4> blocks, CompatibleOperator assembled)
      : blocks_(std::move(blocks)), assembled_(std::move(assembled)) {}

  std::array<CompatibleOperator, 4> blocks_;
  CompatibleOperator assembled_;
};

/// A base space paired with its lift; assembles block operators without
/// re-diagonalising diag(A, A) every time.
class Lifting {
 public:
  explicit Lifting(MetricSpace base);

  const MetricSpace& base() const noexcept { return base_; }
  const MetricSpace& lifted() const noexcept { return lifted_; }

  /// Certifies each block; NotCompatible names the offending block.
  BlockOperator assemble(const ComplexMatrix& p, const ComplexMatrix& q, const ComplexMatrix& r,
                         const ComplexMatrix& s) const;
  BlockOperator assemble(const CompatibleOperator& p, const CompatibleOperator& q,
                         const CompatibleOperator& r, const CompatibleOperator& s) const;

  /// (P^#, R^#; Q^#, S^#): the block form of the lifted A-adjoint.
  BlockOperator sharp_transpose(const BlockOperator& t) const;

 private:
  MetricSpace base_;
  MetricSpace lifted_;
};

BlockOperator assemble(const MetricSpace& space, const ComplexMatrix& p, const ComplexMatrix& q,
                       const ComplexMatrix& r, const ComplexMatrix& s);

struct NamedUnitary {
  std::string name;
  std::string layout;
  BlockOperator op;
};

/// The lifted-metric unitaries used to rotate 2x2 operator matrices:
/// swap, quarter turns, the sign flip and the 45-degree mixers.
std::vector<NamedUnitary> proof_unitaries(const Lifting& lifting);
std::vector<NamedUnitary> proof_unitaries(const MetricSpace& space);

}  // namespace shkit
