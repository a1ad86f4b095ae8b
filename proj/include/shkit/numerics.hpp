#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace shkit {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Default relative tolerance for rank decisions.
inline constexpr double kRankTol = 1e-10;
/// Default relative tolerance for identity assertions.
inline constexpr double kIdentityTol = 1e-8;

struct HermitianEigen {
  RealVector eigenvalues;      // ascending
  ComplexMatrix eigenvectors;  // unitary, column k pairs with eigenvalues[k]
};

/// Throws NonFinite if any entry is NaN or infinite, DimensionMismatch if empty.
void require_finite(const ComplexMatrix& m, std::string_view what = "matrix");

/// Largest entry modulus (0 for an empty matrix).
double max_abs(const ComplexMatrix& m);

HermitianEigen hermitian_eig(const ComplexMatrix& m, double tol = kRankTol);

/// Smallest and largest eigenvalue of a Hermitian matrix. No symmetry check;
/// only the lower triangle is read. Closed forms for orders 1 and 2.
std::pair<double, double> hermitian_extreme_eigenvalues(const ComplexMatrix& h);

/// Eigenvalues of an arbitrary square matrix, in unspecified order.
std::vector<Complex> general_eigenvalues(const ComplexMatrix& m);

/// sqrt of the largest eigenvalue of M*M, computed on the smaller Gram matrix.
double largest_singular_value(const ComplexMatrix& m);

/// Number of eigenvalues strictly above rtol * max. Eigenvalues must be
/// ascending; one below -rtol * max|lambda| raises NegativeEigenvalue.
std::size_t pseudo_rank(std::span<const double> eigenvalues, double rtol = kRankTol);

/// max |lambda| over general_eigenvalues(m).
double spectral_radius(const ComplexMatrix& m);

struct NumericalRadiusOptions {
  /// Coarse grid over [0, 2pi); must be even and >= 8.
  int grid_points = 64;
  /// Refinement stops once an interval is narrower than this.
  double angle_tol = 1e-9;
  /// An arc is dropped once its support bound exceeds the incumbent by at
  /// most prune_tol * max(incumbent, max|m_ij|).
  double prune_tol = 1e-10;
};

/// Classical numerical radius max_theta lambda_max(Re(e^{i theta} M)).
///
/// The function h(theta) = lambda_max(Re(e^{i theta} M)) is the support
/// function of the numerical range W(M). For two grid angles a < b less than
/// pi apart, every direction in between is a nonnegative combination of the
/// two, so
///
///   h(theta) <= (h(a) sin(b - theta) + h(b) sin(theta - a)) / sin(b - a).
///
/// The coarse grid is therefore followed by a branch-and-bound bisection that
/// discards every interval whose bound cannot beat the incumbent by more than
/// prune_tol (relative), and the incumbent is then polished by golden-section
/// search. The result is within prune_tol of the global maximum whatever the
/// number of local maxima, and at rounding level when the maximum is unique.
double numerical_radius(const ComplexMatrix& m, const NumericalRadiusOptions& options = {});

/// lambda_max(Re(e^{i theta} M)) for a single angle.
double rotated_real_part_max(const ComplexMatrix& m, double theta);

}  // namespace shkit
