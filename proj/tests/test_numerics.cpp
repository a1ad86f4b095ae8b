#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "shkit/error.hpp"
#include "shkit/generators.hpp"
#include "shkit/numerics.hpp"

using namespace shkit;

namespace {

ComplexMatrix random_hermitian(int n, std::uint64_t seed) {
  Rng rng(seed);
  const ComplexMatrix g = gaussian_matrix(n, n, rng);
  return (g + g.adjoint()) * 0.5;
}

ComplexMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
  ComplexMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

}  // namespace

TEST_CASE("hermitian_eig on diagonal and swap matrices") {
  const HermitianEigen e = hermitian_eig(mat2(3, 0, 0, 1));
  CHECK(e.eigenvalues(0) == doctest::Approx(1.0));
  CHECK(e.eigenvalues(1) == doctest::Approx(3.0));
  CHECK(std::abs(e.eigenvectors(1, 0)) == doctest::Approx(1.0));
  CHECK(std::abs(e.eigenvectors(0, 1)) == doctest::Approx(1.0));

  const HermitianEigen s = hermitian_eig(mat2(0, 1, 1, 0));
  CHECK(s.eigenvalues(0) == doctest::Approx(-1.0));
  CHECK(s.eigenvalues(1) == doctest::Approx(1.0));
}

TEST_CASE("hermitian_eig matches trace and Frobenius identities") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const ComplexMatrix m = random_hermitian(5, seed);
    const HermitianEigen e = hermitian_eig(m);
    CHECK(std::abs(e.eigenvalues.sum() - m.trace().real()) <= 1e-10 * (1 + m.norm()));
    CHECK(std::abs(e.eigenvalues.squaredNorm() - m.squaredNorm()) <= 1e-10 * (1 + m.squaredNorm()));
    const ComplexMatrix& v = e.eigenvectors;
    CHECK(max_abs(v.adjoint() * v - ComplexMatrix::Identity(5, 5)) <= 1e-10);
    for (int k = 0; k < 5; ++k) {
      CHECK((m * v.col(k) - e.eigenvalues(k) * v.col(k)).norm() <= 1e-10 * (1 + m.norm()));
    }
  }
}

TEST_CASE("hermitian_eig rejects bad input") {
  CHECK_THROWS_AS(hermitian_eig(mat2(0, 1, 0, 0)), Error);
  try {
    hermitian_eig(mat2(0, 1, 0, 0));
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotHermitian);
  }
  const double nan = std::numeric_limits<double>::quiet_NaN();
  try {
    hermitian_eig(mat2(nan, 0, 0, 1));
    FAIL("expected NonFinite");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonFinite);
  }
}

TEST_CASE("extreme eigenvalues agree with the full solver") {
  for (int n = 1; n <= 6; ++n) {
    const ComplexMatrix m = random_hermitian(n, 100 + static_cast<std::uint64_t>(n));
    const auto [lo, hi] = hermitian_extreme_eigenvalues(m);
    const HermitianEigen e = hermitian_eig(m);
    CHECK(lo == doctest::Approx(e.eigenvalues(0)).epsilon(1e-12));
    CHECK(hi == doctest::Approx(e.eigenvalues(n - 1)).epsilon(1e-12));
  }
}

TEST_CASE("general_eigenvalues") {
  auto sorted_re = [](std::vector<Complex> v) {
    std::sort(v.begin(), v.end(), [](Complex a, Complex b) { return a.real() < b.real(); });
    return v;
  };
  const auto tri = sorted_re(general_eigenvalues(mat2(2, 5, 0, -1)));
  CHECK(std::abs(tri[0] - Complex(-1)) < 1e-12);
  CHECK(std::abs(tri[1] - Complex(2)) < 1e-12);
  for (Complex z : general_eigenvalues(mat2(0, 1, 0, 0))) CHECK(std::abs(z) < 1e-12);

  Rng rng(5);
  const ComplexMatrix g = gaussian_matrix(4, 4, rng);
  Complex sum = 0;
  for (Complex z : general_eigenvalues(g)) sum += z;
  CHECK(std::abs(sum - g.trace()) <= 1e-8);
}

TEST_CASE("largest_singular_value") {
  CHECK(largest_singular_value(ComplexMatrix::Zero(3, 2)) == 0.0);
  CHECK(largest_singular_value(mat2(2, 0, 0, -3)) == doctest::Approx(3.0));

  Rng rng(11);
  const ComplexMatrix m = gaussian_matrix(3, 5, rng);
  const double s = largest_singular_value(m);
  const oracle::Whitening euclid = oracle::whiten(ComplexMatrix::Identity(5, 5));
  const double sampled = oracle::sampled_sup(euclid, [&](const ComplexVector& x) { return (m * x).norm(); }, 10000, 12);
  CHECK(sampled <= s * (1 + 1e-12));
  CHECK(s - sampled <= 1e-3 * s);
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  CHECK(s == doctest::Approx(svd.singularValues()(0)).epsilon(1e-12));
}

TEST_CASE("pseudo_rank") {
  const std::vector<double> a{0, 0, 5};
  const std::vector<double> b{1e-14, 1, 2};
  const std::vector<double> c{0, 0, 0};
  const std::vector<double> d{-1, 1, 2};
  CHECK(pseudo_rank(a, 1e-10) == 1);
  CHECK(pseudo_rank(b, 1e-10) == 2);
  CHECK(pseudo_rank(c, 1e-10) == 0);
  CHECK_THROWS_AS(pseudo_rank(d, 1e-10), Error);
}

TEST_CASE("spectral_radius") {
  CHECK(spectral_radius(mat2(2, 0, 0, Complex(0, -3))) == doctest::Approx(3.0));
  CHECK(spectral_radius(mat2(0, 1, 0, 0)) < 1e-12);
}

TEST_CASE("numerical_radius closed forms") {
  CHECK(numerical_radius(mat2(0, 1, 0, 0)) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(numerical_radius(ComplexMatrix::Zero(3, 3)) == 0.0);
  CHECK(numerical_radius(mat2(2, 0, 0, -3)) == doctest::Approx(3.0).epsilon(1e-12));
  ComplexMatrix one(1, 1);
  one(0, 0) = Complex(3, 4);
  CHECK(numerical_radius(one) == doctest::Approx(5.0));
  // Jordan block J_3(0): omega = cos(pi/4).
  ComplexMatrix j = ComplexMatrix::Zero(3, 3);
  j(0, 1) = 1;
  j(1, 2) = 1;
  CHECK(numerical_radius(j) == doctest::Approx(std::cos(M_PI / 4)).epsilon(1e-12));
}

TEST_CASE("numerical_radius agrees with a dense theta grid") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Rng rng(seed);
    const int n = 2 + static_cast<int>(seed % 6);
    const ComplexMatrix m = gaussian_matrix(n, n, rng);
    const double w = numerical_radius(m);
    const double grid = oracle::grid_numerical_radius(m, 20000);
    CHECK(grid <= w * (1 + 1e-12));
    CHECK(w - grid <= 1e-7 * w);
    // Classical bounds ||M||/2 <= omega <= ||M|| and rho <= omega.
    const double s = largest_singular_value(m);
    CHECK(0.5 * s <= w * (1 + 1e-12));
    CHECK(w <= s * (1 + 1e-12));
    CHECK(spectral_radius(m) <= w * (1 + 1e-12));
  }
}
