#include "shkit/metric_space.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "shkit/error.hpp"

namespace shkit {

struct MetricSpace::Data {
  std::size_t dim = 0;
  std::size_t rank = 0;
  double rtol = kRankTol;
  double lambda_max = 0.0;
  ComplexMatrix metric;
  RealVector lambda;
  RealVector lambda_sqrt;
  RealVector lambda_inv_sqrt;
  ComplexMatrix range_basis;
  ComplexMatrix null_basis;
  ComplexMatrix sqrt;
  ComplexMatrix pinv;
  ComplexMatrix projector;
};

MetricSpace::MetricSpace(std::shared_ptr<const Data> data) : data_(std::move(data)) {}

std::size_t MetricSpace::dim() const { return data_->dim; }
std::size_t MetricSpace::rank() const { return data_->rank; }
double MetricSpace::rtol() const { return data_->rtol; }
double MetricSpace::lambda_max() const { return data_->lambda_max; }
const ComplexMatrix& MetricSpace::metric() const { return data_->metric; }
const RealVector& MetricSpace::range_eigenvalues() const { return data_->lambda; }
const ComplexMatrix& MetricSpace::range_basis() const { return data_->range_basis; }
const ComplexMatrix& MetricSpace::null_basis() const { return data_->null_basis; }
const ComplexMatrix& MetricSpace::sqrt() const { return data_->sqrt; }
const ComplexMatrix& MetricSpace::pinv() const { return data_->pinv; }
const ComplexMatrix& MetricSpace::range_projector() const { return data_->projector; }

ComplexMatrix MetricSpace::compress(const ComplexMatrix& t) const {
  const auto& d = *data_;
  ComplexMatrix inner = d.range_basis.adjoint() * t * d.range_basis;
  return d.lambda_sqrt.asDiagonal() * inner * d.lambda_inv_sqrt.asDiagonal();
}

MetricSpace make_space(const ComplexMatrix& a, double rtol) {
  if (a.rows() != a.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "metric must be square");
  }
  const HermitianEigen eig = hermitian_eig(a, rtol);
  const auto n = static_cast<std::size_t>(a.rows());
  const RealVector& values = eig.eigenvalues;

  double scale = values.cwiseAbs().maxCoeff();
  if (scale == 0.0) throw Error(ErrorKind::ZeroMetric, "metric is the zero matrix");
  if (values(0) < -rtol * scale) {
    throw Error(ErrorKind::NotPositive,
                "metric eigenvalue " + std::to_string(values(0)) + " is below -rtol * lambda_max");
  }
  const std::size_t rank = pseudo_rank({values.data(), n}, rtol);
  if (rank == 0) throw Error(ErrorKind::ZeroMetric, "metric has no eigenvalue above rtol");

  auto d = std::make_shared<MetricSpace::Data>();
  const auto r = static_cast<Eigen::Index>(rank);
  const auto nullity = static_cast<Eigen::Index>(n - rank);
  d->dim = n;
  d->rank = rank;
  d->rtol = rtol;
  d->lambda = values.tail(r);
  d->lambda_max = d->lambda(r - 1);
  d->lambda_sqrt = d->lambda.cwiseSqrt();
  d->lambda_inv_sqrt = d->lambda_sqrt.cwiseInverse();
  d->range_basis = eig.eigenvectors.rightCols(r);
  d->null_basis = eig.eigenvectors.leftCols(nullity);
  d->metric = (a + a.adjoint()) * 0.5;

  const ComplexMatrix& v = d->range_basis;
  d->sqrt = v * d->lambda_sqrt.asDiagonal() * v.adjoint();
  d->pinv = v * d->lambda.cwiseInverse().asDiagonal() * v.adjoint();
  d->projector = v * v.adjoint();
  return MetricSpace(std::move(d));
}

namespace {

void require_vector(const MetricSpace& space, const ComplexVector& x, const char* what) {
  if (static_cast<std::size_t>(x.size()) != space.dim()) {
    throw Error(ErrorKind::DimensionMismatch, std::string(what) + " has length " +
                                                  std::to_string(x.size()) + ", space has dimension " +
                                                  std::to_string(space.dim()));
  }
}

void require_square(const MetricSpace& space, const ComplexMatrix& t, std::string_view what) {
  if (static_cast<std::size_t>(t.rows()) != space.dim() ||
      static_cast<std::size_t>(t.cols()) != space.dim()) {
    throw Error(ErrorKind::DimensionMismatch,
                std::string(what) + " is " + std::to_string(t.rows()) + "x" + std::to_string(t.cols()) +
                    ", space has dimension " + std::to_string(space.dim()));
  }
}

}  // namespace

Complex a_inner(const MetricSpace& space, const ComplexVector& x, const ComplexVector& y) {
  require_vector(space, x, "x");
  require_vector(space, y, "y");
  return y.dot(space.metric() * x);
}

double a_seminorm(const MetricSpace& space, const ComplexVector& x) {
  require_vector(space, x, "x");
  return (space.sqrt() * x).norm();
}

CompatibilityCheck is_compatible(const MetricSpace& space, const ComplexMatrix& t) {
  require_square(space, t, "operator");
  require_finite(t, "operator");
  CompatibilityCheck check;
  check.threshold = space.rtol() * (1.0 + max_abs(t)) * std::sqrt(space.lambda_max());
  if (space.rank() == space.dim()) {
    check.compatible = true;
    return check;
  }
  check.residual = max_abs(space.sqrt() * t * space.null_basis());
  check.compatible = check.residual <= check.threshold;
  if (!check.compatible) {
    check.diagnostic = "kernel invariance fails: T does not map N(A) into N(A) (max |A^{1/2} T V_0| = " +
                       std::to_string(check.residual) + " > " + std::to_string(check.threshold) + ")";
  }
  return check;
}

CompatibleOperator::CompatibleOperator(MetricSpace space, ComplexMatrix t)
    : space_(std::move(space)), matrix_(std::move(t)), compressed_(space_.compress(matrix_)) {}

CompatibleOperator trusted_operator(const MetricSpace& space, ComplexMatrix t) {
  return CompatibleOperator(space, std::move(t));
}

CompatibleOperator CompatibleOperator::make(const MetricSpace& space, const ComplexMatrix& t,
                                            std::string_view label) {
  require_square(space, t, label);
  const CompatibilityCheck check = is_compatible(space, t);
  if (!check) {
    throw Error(ErrorKind::NotCompatible, std::string(label) + ": " + check.diagnostic);
  }
  return CompatibleOperator(space, t);
}

CompatibleOperator CompatibleOperator::zero(const MetricSpace& space) {
  const auto n = static_cast<Eigen::Index>(space.dim());
  return CompatibleOperator(space, ComplexMatrix::Zero(n, n));
}

CompatibleOperator CompatibleOperator::identity(const MetricSpace& space) {
  const auto n = static_cast<Eigen::Index>(space.dim());
  return CompatibleOperator(space, ComplexMatrix::Identity(n, n));
}

namespace {

void require_same_space(const CompatibleOperator& a, const CompatibleOperator& b) {
  if (!a.space().same_as(b.space())) {
    throw Error(ErrorKind::DimensionMismatch, "operators live on different metric spaces");
  }
}

}  // namespace

CompatibleOperator CompatibleOperator::operator-() const {
  return CompatibleOperator(space_, -matrix_);
}

CompatibleOperator& CompatibleOperator::operator+=(const CompatibleOperator& rhs) {
  require_same_space(*this, rhs);
  matrix_ += rhs.matrix_;
  compressed_ = space_.compress(matrix_);
  return *this;
}

CompatibleOperator& CompatibleOperator::operator-=(const CompatibleOperator& rhs) {
  require_same_space(*this, rhs);
  matrix_ -= rhs.matrix_;
  compressed_ = space_.compress(matrix_);
  return *this;
}

CompatibleOperator& CompatibleOperator::operator*=(Complex scalar) {
  matrix_ *= scalar;
  compressed_ = space_.compress(matrix_);
  return *this;
}

CompatibleOperator operator*(const CompatibleOperator& lhs, const CompatibleOperator& rhs) {
  require_same_space(lhs, rhs);
  return CompatibleOperator(lhs.space_, lhs.matrix_ * rhs.matrix_);
}

CompatibleOperator sharp(const CompatibleOperator& t) {
  const MetricSpace& space = t.space();
  // A^+ T* A with A^+ = V diag(1/lambda) V*, A = V diag(lambda) V*; the factored
  // form keeps the range exactly inside span(V).
  const ComplexMatrix& v = space.range_basis();
  const RealVector& lambda = space.range_eigenvalues();
  ComplexMatrix core = v.adjoint() * t.matrix().adjoint() * v;
  core = lambda.cwiseInverse().asDiagonal() * core * lambda.asDiagonal();
  return trusted_operator(space, v * core * v.adjoint());
}

double a_op_norm(const CompatibleOperator& t) {
  return largest_singular_value(t.compressed());
}

double a_numerical_radius(const CompatibleOperator& t, const NumericalRadiusOptions& options) {
  return numerical_radius(t.compressed(), options);
}

double a_spectral_radius(const CompatibleOperator& t) {
  return spectral_radius(t.compressed());
}

CompatibleOperator re_part(const CompatibleOperator& t) {
  return (t + sharp(t)) * Complex(0.5, 0.0);
}

CompatibleOperator im_part(const CompatibleOperator& t) {
  return (t - sharp(t)) * Complex(0.0, -0.5);
}

bool is_a_selfadjoint(const MetricSpace& space, const ComplexMatrix& t, double tol) {
  require_square(space, t, "operator");
  const ComplexMatrix at = space.metric() * t;
  return max_abs(at - at.adjoint()) <= tol * (1.0 + max_abs(at));
}

bool is_a_positive(const MetricSpace& space, const ComplexMatrix& t, double tol) {
  if (!is_a_selfadjoint(space, t, tol)) return false;
  const ComplexMatrix at = space.metric() * t;
  const ComplexMatrix sym = (at + at.adjoint()) * 0.5;
  return hermitian_extreme_eigenvalues(sym).first >= -tol * (1.0 + max_abs(at));
}

bool is_a_unitary(const MetricSpace& space, const ComplexMatrix& u, double tol) {
  require_square(space, u, "operator");
  if (!is_compatible(space, u)) return false;
  const CompatibleOperator op = trusted_operator(space, u);
  const CompatibleOperator us = sharp(op);
  const ComplexMatrix& proj = space.range_projector();
  const double left = max_abs((us * op).matrix() - proj);
  const double right = max_abs((sharp(us) * us).matrix() - proj);
  return left <= tol && right <= tol;
}

}  // namespace shkit
