#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "shkit/error.hpp"
#include "shkit/generators.hpp"
#include "shkit/metric_space.hpp"

using namespace shkit;

namespace {

ComplexMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
  ComplexMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::Parse;
}

}  // namespace

TEST_CASE("make_space on simple metrics") {
  const MetricSpace id = make_space(ComplexMatrix::Identity(3, 3));
  CHECK(id.rank() == 3);
  CHECK(max_abs(id.range_projector() - ComplexMatrix::Identity(3, 3)) < 1e-14);
  CHECK(max_abs(id.pinv() - ComplexMatrix::Identity(3, 3)) < 1e-14);
  CHECK(max_abs(id.sqrt() - ComplexMatrix::Identity(3, 3)) < 1e-14);

  const MetricSpace d = make_space(mat2(4, 0, 0, 0));
  CHECK(d.rank() == 1);
  CHECK(d.range_eigenvalues()(0) == doctest::Approx(4.0));
  CHECK(max_abs(d.sqrt() - mat2(2, 0, 0, 0)) < 1e-14);
  CHECK(max_abs(d.pinv() - mat2(0.25, 0, 0, 0)) < 1e-14);
  CHECK(max_abs(d.range_projector() - mat2(1, 0, 0, 0)) < 1e-14);

  const MetricSpace f = make_space(mat2(2, 1, 1, 2));
  CHECK(f.rank() == 2);
  CHECK(f.range_eigenvalues()(0) == doctest::Approx(1.0));
  CHECK(f.range_eigenvalues()(1) == doctest::Approx(3.0));
  const ComplexMatrix& a = f.metric();
  CHECK(max_abs(a * f.pinv() * a - a) < 1e-12);
}

TEST_CASE("make_space errors") {
  CHECK(kind_of([] { make_space(mat2(1, 1, 0, 1)); }) == ErrorKind::NotHermitian);
  CHECK(kind_of([] { make_space(mat2(1, 0, 0, -1)); }) == ErrorKind::NotPositive);
  CHECK(kind_of([] { make_space(ComplexMatrix::Zero(2, 2)); }) == ErrorKind::ZeroMetric);
  CHECK(kind_of([] { make_space(ComplexMatrix::Zero(2, 3)); }) == ErrorKind::DimensionMismatch);
}

TEST_CASE("metric invariants on generated spaces") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const std::size_t n = 2 + seed % 5;
    const std::size_t r = std::max<std::size_t>(1, n - seed % 3);
    const MetricSpace s = gen_metric(n, r, seed);
    const ComplexMatrix& a = s.metric();
    const double scale = 1 + max_abs(a);
    CHECK(s.rank() == r);
    CHECK(max_abs(a * s.range_projector() - a) <= 1e-10 * scale);
    CHECK(max_abs(s.range_projector() * a - a) <= 1e-10 * scale);
    CHECK(max_abs(s.sqrt() * s.sqrt() - a) <= 1e-10 * scale);
    CHECK(max_abs(a * s.pinv() * a - a) <= 1e-10 * scale);
  }
}

TEST_CASE("a_inner") {
  const MetricSpace id = make_space(ComplexMatrix::Identity(2, 2));
  ComplexVector x(2), y(2);
  x << Complex(1, 2), 3;
  y << 4, Complex(0, 1);
  CHECK(std::abs(a_inner(id, x, y) - y.dot(x)) < 1e-14);

  const MetricSpace d = make_space(mat2(1, 0, 0, 0));
  ComplexVector e2(2);
  e2 << 0, 1;
  CHECK(std::abs(a_inner(d, e2, e2)) == 0.0);
  CHECK(a_seminorm(d, e2) == 0.0);

  const MetricSpace g = gen_metric(4, 3, 9);
  Rng rng(3);
  for (int k = 0; k < 50; ++k) {
    const ComplexVector v = gaussian_matrix(4, 1, rng);
    const Complex q = a_inner(g, v, v);
    CHECK(std::abs(q.imag()) <= 1e-12 * (1 + std::abs(q)));
    CHECK(q.real() >= -1e-12);
  }
  CHECK(kind_of([&] { a_inner(g, e2, e2); }) == ErrorKind::DimensionMismatch);
}

TEST_CASE("is_compatible uses kernel invariance") {
  Rng rng(4);
  const ComplexMatrix t = gaussian_matrix(3, 3, rng);
  CHECK(is_compatible(make_space(ComplexMatrix::Identity(3, 3)), t).compatible);

  const MetricSpace d = make_space(mat2(1, 0, 0, 0));
  const CompatibilityCheck bad = is_compatible(d, mat2(0, 1, 0, 0));
  CHECK_FALSE(bad.compatible);
  CHECK(bad.diagnostic.find("kernel invariance") != std::string::npos);
  CHECK(is_compatible(d, mat2(Complex(1, 2), 0, 3, Complex(0, -5))).compatible);
  CHECK(kind_of([&] { CompatibleOperator::make(d, mat2(0, 1, 0, 0), "T"); }) == ErrorKind::NotCompatible);
}

TEST_CASE("generated operators pass their predicates") {
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const std::size_t n = 2 + seed % 5;
    const std::size_t r = std::max<std::size_t>(1, n - seed % 3);
    const MetricSpace s = gen_metric(n, r, seed);
    CHECK(is_compatible(s, gen_compatible(s, seed).matrix()).compatible);
    if (seed % 10 == 0) CHECK(is_a_unitary(s, gen_a_unitary(s, seed).matrix()));
  }
}

TEST_CASE("generators are deterministic and respect the rank") {
  CHECK(gen_metric(3, 3, 7).metric() == gen_metric(3, 3, 7).metric());
  CHECK(gen_metric(4, 2, 1).rank() == 2);
  const MetricSpace wide = gen_metric(5, 5, 2);
  const RealVector& l = wide.range_eigenvalues();
  CHECK(l.maxCoeff() / l.minCoeff() <= 1e4);
  CHECK(kind_of([] { gen_metric(3, 0, 1); }) == ErrorKind::BadRank);
  CHECK(kind_of([] { gen_metric(3, 4, 1); }) == ErrorKind::BadRank);

  const MetricSpace d = make_space(mat2(1, 0, 0, 0));
  const ComplexMatrix t = gen_compatible(d, 5).matrix();
  CHECK(std::abs(t(0, 1)) < 1e-15);
}

TEST_CASE("sharp") {
  Rng rng(8);
  const ComplexMatrix g = gaussian_matrix(3, 3, rng);
  const MetricSpace id = make_space(ComplexMatrix::Identity(3, 3));
  CHECK(max_abs(sharp(CompatibleOperator::make(id, g)).matrix() - g.adjoint()) < 1e-14);

  const MetricSpace d21 = make_space(mat2(2, 0, 0, 1));
  const CompatibleOperator nil = CompatibleOperator::make(d21, mat2(0, 1, 0, 0));
  CHECK(max_abs(sharp(nil).matrix() - mat2(0, 0, 2, 0)) < 1e-14);
  // Adjoint identity <Tx, y>_A = <x, T^# y>_A on samples.
  for (int k = 0; k < 20; ++k) {
    const ComplexVector x = gaussian_matrix(2, 1, rng);
    const ComplexVector y = gaussian_matrix(2, 1, rng);
    CHECK(std::abs(a_inner(d21, nil.matrix() * x, y) - a_inner(d21, x, sharp(nil).matrix() * y)) < 1e-12);
  }

  const Complex a(1, 2), c(3, -1), dd(0, 4);
  const MetricSpace d10 = make_space(mat2(1, 0, 0, 0));
  const CompatibleOperator t = CompatibleOperator::make(d10, mat2(a, 0, c, dd));
  CHECK(max_abs(sharp(t).matrix() - mat2(std::conj(a), 0, 0, 0)) < 1e-14);
}

TEST_CASE("A-quantities on closed forms") {
  const MetricSpace id = make_space(ComplexMatrix::Identity(2, 2));
  const CompatibleOperator nil = CompatibleOperator::make(id, mat2(0, 1, 0, 0));
  CHECK(a_numerical_radius(nil) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(a_spectral_radius(nil) < 1e-12);
  CHECK(a_op_norm(nil) == doctest::Approx(1.0));

  const MetricSpace d10 = make_space(mat2(1, 0, 0, 0));
  const CompatibleOperator t = CompatibleOperator::make(d10, mat2(2, 0, 7, 5));
  CHECK(std::abs(a_numerical_radius(t) - 2.0) <= 1e-10);
  CHECK(std::abs(a_op_norm(t) - 2.0) <= 1e-10);
  CHECK(std::abs(a_spectral_radius(t) - 2.0) <= 1e-10);

  const CompatibleOperator diag = CompatibleOperator::make(id, mat2(2, 0, 0, Complex(0, -3)));
  CHECK(a_spectral_radius(diag) == doctest::Approx(3.0));

  const CompatibleOperator z = CompatibleOperator::zero(gen_metric(4, 2, 3));
  CHECK(a_numerical_radius(z) == 0.0);
  CHECK(a_op_norm(z) == 0.0);
  CHECK(a_spectral_radius(z) == 0.0);

  const ComplexMatrix h = mat2(1, Complex(2, 1), Complex(2, -1), -3);
  const CompatibleOperator herm = CompatibleOperator::make(id, h);
  CHECK(a_numerical_radius(herm) == doctest::Approx(a_op_norm(herm)).epsilon(1e-12));
  CHECK(a_spectral_radius(herm) == doctest::Approx(a_op_norm(herm)).epsilon(1e-12));
}

TEST_CASE("A-quantities against sampling and Gelfand oracles") {
  const MetricSpace s = gen_metric(5, 3, 21);
  for (std::uint64_t k = 0; k < 5; ++k) {
    const CompatibleOperator t = gen_compatible(s, 100 + k);
    const double n = a_op_norm(t);
    const double ns = oracle::sampled_op_norm(s.metric(), t.matrix(), 100000, k);
    CHECK(ns <= n * (1 + 1e-12));
    CHECK(n - ns <= 1e-3 * n);
    const double w = a_numerical_radius(t);
    const double ws = oracle::sampled_numerical_radius(s.metric(), t.matrix(), 100000, k);
    CHECK(ws <= w * (1 + 1e-12));
    CHECK(w - ws <= 1e-3 * w);
    const double r = a_spectral_radius(t);
    CHECK(std::abs(oracle::gelfand_radius(s.metric(), t.matrix()) - r) <= 1e-3 * r);
    // ||Tx||_A <= ||T||_A ||x||_A on samples.
    Rng rng(k);
    for (int j = 0; j < 50; ++j) {
      const ComplexVector x = gaussian_matrix(5, 1, rng);
      CHECK(a_seminorm(s, t.matrix() * x) <= n * a_seminorm(s, x) * (1 + 1e-12) + 1e-14);
    }
  }
}

TEST_CASE("re_part, im_part and predicates") {
  const MetricSpace id = make_space(ComplexMatrix::Identity(2, 2));
  const CompatibleOperator nil = CompatibleOperator::make(id, mat2(0, 1, 0, 0));
  CHECK(max_abs(re_part(nil).matrix() - mat2(0, 0.5, 0.5, 0)) < 1e-15);
  CHECK(max_abs(im_part(nil).matrix() - mat2(0, 1, -1, 0) / Complex(0, 2)) < 1e-15);

  const MetricSpace s = gen_metric(4, 3, 5);
  const CompatibleOperator t = gen_compatible(s, 6);
  const CompatibleOperator re = re_part(t);
  CHECK(is_a_selfadjoint(s, re.matrix(), 1e-10));
  // Im_A of an A-selfadjoint operator vanishes as an A-operator; its null block
  // need not be zero when A is singular.
  const CompatibleOperator im_re = im_part(re);
  CHECK(a_op_norm(im_re) <= 1e-12 * (1 + a_op_norm(re)));
  CHECK(max_abs(s.metric() * im_re.matrix()) <= 1e-12 * (1 + max_abs(s.metric() * re.matrix())));
  CHECK_FALSE(is_a_selfadjoint(s, t.matrix()));
  CHECK(is_a_positive(s, (sharp(t) * t).matrix()));
  // T = Re_A(T) + i Im_A(T) holds after projection onto R(A).
  const ComplexMatrix& p = s.range_projector();
  const ComplexMatrix recombined = re.matrix() + Complex(0, 1) * im_part(t).matrix();
  CHECK(max_abs(p * (recombined - t.matrix()) * p) <= 1e-10 * (1 + max_abs(t.matrix())));

  CHECK(is_a_unitary(id, ComplexMatrix::Identity(2, 2)));
  const MetricSpace d10 = make_space(mat2(1, 0, 0, 0));
  CHECK(is_a_unitary(d10, mat2(std::polar(1.0, 0.7), 0, 0, 5)));
  CHECK_FALSE(is_a_unitary(d10, mat2(2, 0, 0, 1)));
  CHECK(is_a_unitary(d10, ComplexMatrix::Identity(2, 2)));
}

TEST_CASE("operator algebra") {
  const MetricSpace s = gen_metric(3, 2, 1);
  const CompatibleOperator a = gen_compatible(s, 1);
  const CompatibleOperator b = gen_compatible(s, 2);
  CHECK(max_abs((a + b).matrix() - (a.matrix() + b.matrix())) == 0.0);
  CHECK(max_abs((a * b).matrix() - a.matrix() * b.matrix()) == 0.0);
  CHECK(max_abs((a * b).compressed() - a.compressed() * b.compressed()) < 1e-10 * (1 + max_abs(a.compressed())) *
                                                                               (1 + max_abs(b.compressed())));
  const CompatibleOperator other = gen_compatible(gen_metric(3, 2, 1), 1);
  CHECK(kind_of([&] { (void)(a + other); }) == ErrorKind::DimensionMismatch);
}
