#include "shkit/generators.hpp"

#include <cmath>
#include <string>

#include "shkit/error.hpp"

namespace shkit {

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
  return mix64(mix64(master) ^ mix64(index + 0x632be59bd9b4e019ULL));
}

ComplexMatrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> normal;
  ComplexMatrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      m(i, j) = Complex(re, im);
    }
  }
  return m;
}

ComplexMatrix random_unitary(Eigen::Index n, Rng& rng) {
  const ComplexMatrix g = gaussian_matrix(n, n, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, n);
  // Fix the phase ambiguity so the distribution does not depend on R's signs.
  const ComplexMatrix& r = qr.matrixQR();
  for (Eigen::Index k = 0; k < n; ++k) {
    const double mag = std::abs(r(k, k));
    if (mag > 0.0) q.col(k) *= r(k, k) / mag;
  }
  return q;
}

MetricSpace gen_metric(std::size_t n, std::size_t r, std::uint64_t seed, bool stress) {
  if (r < 1 || r > n) {
    throw Error(ErrorKind::BadRank,
                "rank " + std::to_string(r) + " must satisfy 1 <= r <= n = " + std::to_string(n));
  }
  Rng rng(seed);
  const auto nn = static_cast<Eigen::Index>(n);
  const ComplexMatrix v = random_unitary(nn, rng);
  const double decades = stress ? 4.0 : 2.0;
  std::uniform_real_distribution<double> expo(-decades, decades);
  RealVector lambda = RealVector::Zero(nn);
  for (std::size_t k = 0; k < r; ++k) lambda(static_cast<Eigen::Index>(k)) = std::pow(10.0, expo(rng));
  ComplexMatrix a = v * lambda.asDiagonal() * v.adjoint();
  a = (a + a.adjoint()).eval() * 0.5;
  MetricSpace space = make_space(a);
  if (space.rank() != r) {
    throw Error(ErrorKind::BadRank, "generated metric has pseudo-rank " + std::to_string(space.rank()) +
                                        ", wanted " + std::to_string(r));
  }
  return space;
}

CompatibleOperator gen_compatible(const MetricSpace& space, std::uint64_t seed) {
  Rng rng(seed);
  const auto n = static_cast<Eigen::Index>(space.dim());
  const auto r = static_cast<Eigen::Index>(space.rank());
  ComplexMatrix core = gaussian_matrix(n, n, rng);
  core.topRightCorner(r, n - r).setZero();
  ComplexMatrix basis(n, n);
  basis << space.range_basis(), space.null_basis();
  return trusted_operator(space, basis * core * basis.adjoint());
}

CompatibleOperator gen_a_unitary(const MetricSpace& space, std::uint64_t seed) {
  Rng rng(seed);
  const auto r = static_cast<Eigen::Index>(space.rank());
  const auto nullity = static_cast<Eigen::Index>(space.dim()) - r;
  const ComplexMatrix w = random_unitary(r, rng);
  const ComplexMatrix z = gaussian_matrix(nullity, nullity, rng);
  const RealVector root = space.range_eigenvalues().cwiseSqrt();
  const ComplexMatrix& vr = space.range_basis();
  const ComplexMatrix& v0 = space.null_basis();
  ComplexMatrix u = vr * (root.cwiseInverse().asDiagonal() * w * root.asDiagonal()) * vr.adjoint();
  if (nullity > 0) u += v0 * z * v0.adjoint();
  return trusted_operator(space, u);
}

}  // namespace shkit
