#pragma once

#include <cstddef>
#include <memory>
#include <string>

#include "shkit/numerics.hpp"

namespace shkit {

/// A finite-dimensional space carrying the semi-inner product <x, y>_A = <Ax, y>
/// of a nonzero positive semidefinite metric A.
///
/// Construction diagonalises A once: A = V_r diag(lambda) V_r*, where V_r spans
/// R(A) and V_0 spans N(A). Square root, pseudoinverse and the range projector
/// are cached. The object is an immutable handle; copies share the cached
/// data and are safe to use from several threads.
class MetricSpace {
 public:
  std::size_t dim() const;
  std::size_t rank() const;
  double rtol() const;
  double lambda_max() const;

  const ComplexMatrix& metric() const;
  /// The r nonzero eigenvalues, ascending.
  const RealVector& range_eigenvalues() const;
  const ComplexMatrix& range_basis() const;
  const ComplexMatrix& null_basis() const;
  const ComplexMatrix& sqrt() const;
  const ComplexMatrix& pinv() const;
  const ComplexMatrix& range_projector() const;

  /// lambda^{1/2} V_r* T V_r lambda^{-1/2}: T restricted to R(A) in coordinates
  /// where the A-geometry is Euclidean.
  ComplexMatrix compress(const ComplexMatrix& t) const;

  /// Same underlying construction (identity, not value equality).
  bool same_as(const MetricSpace& other) const noexcept { return data_ == other.data_; }

 private:
  struct Data;
  explicit MetricSpace(std::shared_ptr<const Data> data);
  friend MetricSpace make_space(const ComplexMatrix& a, double rtol);

  std::shared_ptr<const Data> data_;
};

/// Throws NotHermitian, NotPositive or ZeroMetric.
MetricSpace make_space(const ComplexMatrix& a, double rtol = kRankTol);

/// <x, y>_A = <Ax, y> (linear in x).
Complex a_inner(const MetricSpace& space, const ComplexVector& x, const ComplexVector& y);
/// ||x||_A = ||A^{1/2} x||.
double a_seminorm(const MetricSpace& space, const ComplexVector& x);

struct CompatibilityCheck {
  bool compatible = false;
  double residual = 0.0;   // max |A^{1/2} T V_0|
  double threshold = 0.0;  // rtol (1 + max|T|) ||A^{1/2}||
  std::string diagnostic;

  explicit operator bool() const noexcept { return compatible; }
};

/// Kernel-invariance test T(N(A)) into N(A), which in finite dimension is
/// equivalent to R(T* A) in R(A) and to A-boundedness.
CompatibilityCheck is_compatible(const MetricSpace& space, const ComplexMatrix& t);

/// An n x n operator certified to admit an A-adjoint, together with its
/// compression. Sums, differences, scalar multiples and products of
/// compatible operators on the same space are compatible, so the algebra
/// below never re-runs the certificate.
class CompatibleOperator {
 public:
  /// Throws NotCompatible (message names `label`) or DimensionMismatch.
  static CompatibleOperator make(const MetricSpace& space, const ComplexMatrix& t,
                                 std::string_view label = "operator");
  static CompatibleOperator zero(const MetricSpace& space);
  static CompatibleOperator identity(const MetricSpace& space);

  const MetricSpace& space() const noexcept { return space_; }
  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  const ComplexMatrix& compressed() const noexcept { return compressed_; }

  CompatibleOperator operator-() const;
  CompatibleOperator& operator+=(const CompatibleOperator& rhs);
  CompatibleOperator& operator-=(const CompatibleOperator& rhs);
  CompatibleOperator& operator*=(Complex scalar);

  friend CompatibleOperator operator+(CompatibleOperator lhs, const CompatibleOperator& rhs) {
    return lhs += rhs;
  }
  friend CompatibleOperator operator-(CompatibleOperator lhs, const CompatibleOperator& rhs) {
    return lhs -= rhs;
  }
  friend CompatibleOperator operator*(Complex scalar, CompatibleOperator op) { return op *= scalar; }
  friend CompatibleOperator operator*(CompatibleOperator op, Complex scalar) { return op *= scalar; }
  friend CompatibleOperator operator*(const CompatibleOperator& lhs, const CompatibleOperator& rhs);

 private:
  CompatibleOperator(MetricSpace space, ComplexMatrix t);
  friend CompatibleOperator trusted_operator(const MetricSpace& space, ComplexMatrix t);

  MetricSpace space_;
  ComplexMatrix matrix_;
  ComplexMatrix compressed_;
};

/// Wraps a matrix already known to be compatible (closure of the algebra,
/// generator output). Skips the certificate.
CompatibleOperator trusted_operator(const MetricSpace& space, ComplexMatrix t);

/// A-adjoint T^# = A^+ T* A, the reduced solution of AX = T*A.
CompatibleOperator sharp(const CompatibleOperator& t);

/// ||T||_A: largest singular value of the compression.
double a_op_norm(const CompatibleOperator& t);
/// omega_A(T): classical numerical radius of the compression.
double a_numerical_radius(const CompatibleOperator& t,
                          const NumericalRadiusOptions& options = {});
/// r_A(T): classical spectral radius of the compression.
double a_spectral_radius(const CompatibleOperator& t);

/// (T + T^#) / 2
CompatibleOperator re_part(const CompatibleOperator& t);
/// (T - T^#) / 2i
CompatibleOperator im_part(const CompatibleOperator& t);

/// AT = T*A within tol (1 + max|AT|).
bool is_a_selfadjoint(const MetricSpace& space, const ComplexMatrix& t, double tol = kIdentityTol);
/// A-selfadjoint and AT positive semidefinite within tol.
bool is_a_positive(const MetricSpace& space, const ComplexMatrix& t, double tol = kIdentityTol);
/// Compatible, U^# U = P_R and (U^#)^# U^# = P_R within tol (max entry).
bool is_a_unitary(const MetricSpace& space, const ComplexMatrix& u, double tol = kIdentityTol);

}  // namespace shkit
