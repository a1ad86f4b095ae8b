#include "shkit/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "shkit/error.hpp"

namespace shkit {

void require_finite(const ComplexMatrix& m, std::string_view what) {
  if (m.rows() < 1 || m.cols() < 1) {
    throw Error(ErrorKind::DimensionMismatch, std::string(what) + " is empty");
  }
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      const Complex z = m(i, j);
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw Error(ErrorKind::NonFinite, std::string(what) + " has a non-finite entry at (" +
                                              std::to_string(i) + "," + std::to_string(j) + ")");
      }
    }
  }
}

double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

HermitianEigen hermitian_eig(const ComplexMatrix& m, double tol) {
  require_finite(m, "hermitian_eig input");
  if (m.rows() != m.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "hermitian_eig needs a square matrix");
  }
  const double asym = max_abs(m - m.adjoint());
  if (asym > tol * (1.0 + max_abs(m))) {
    throw Error(ErrorKind::NotHermitian,
                "max |M - M*| = " + std::to_string(asym) + " exceeds tolerance");
  }
  const ComplexMatrix sym = (m + m.adjoint()) * 0.5;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::NoConvergence, "Hermitian eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

std::pair<double, double> hermitian_extreme_eigenvalues(const ComplexMatrix& h) {
  const Eigen::Index n = h.rows();
  if (n == 1) {
    const double a = h(0, 0).real();
    return {a, a};
  }
  if (n == 2) {
    const double a = h(0, 0).real();
    const double d = h(1, 1).real();
    const double mid = 0.5 * (a + d);
    const double rad = std::hypot(0.5 * (a - d), std::abs(h(1, 0)));
    return {mid - rad, mid + rad};
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::NoConvergence, "Hermitian eigensolver did not converge");
  }
  return {solver.eigenvalues()(0), solver.eigenvalues()(n - 1)};
}

std::vector<Complex> general_eigenvalues(const ComplexMatrix& m) {
  require_finite(m, "general_eigenvalues input");
  if (m.rows() != m.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "general_eigenvalues needs a square matrix");
  }
  if (m.rows() == 1) return {m(0, 0)};
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(m, false);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::NoConvergence, "complex Schur iteration did not converge");
  }
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

double largest_singular_value(const ComplexMatrix& m) {
  require_finite(m, "largest_singular_value input");
  const ComplexMatrix gram = m.rows() >= m.cols() ? ComplexMatrix(m.adjoint() * m)
                                                  : ComplexMatrix(m * m.adjoint());
  const double top = hermitian_extreme_eigenvalues(gram).second;
  return std::sqrt(std::max(top, 0.0));
}

std::size_t pseudo_rank(std::span<const double> eigenvalues, double rtol) {
  if (eigenvalues.empty()) return 0;
  double scale = 0.0;
  for (double v : eigenvalues) scale = std::max(scale, std::abs(v));
  for (double v : eigenvalues) {
    if (v < -rtol * scale) {
      throw Error(ErrorKind::NegativeEigenvalue,
                  "eigenvalue " + std::to_string(v) + " below -rtol * max|lambda|");
    }
  }
  const double top = *std::max_element(eigenvalues.begin(), eigenvalues.end());
  const double cut = rtol * top;
  return static_cast<std::size_t>(
      std::count_if(eigenvalues.begin(), eigenvalues.end(), [&](double v) { return v > cut; }));
}

double spectral_radius(const ComplexMatrix& m) {
  double best = 0.0;
  for (const Complex& z : general_eigenvalues(m)) best = std::max(best, std::abs(z));
  return best;
}

namespace {

struct RotatedParts {
  ComplexMatrix hermitian;       // (M + M*) / 2
  ComplexMatrix skew_hermitian;  // (M - M*) / 2i
};

RotatedParts split(const ComplexMatrix& m) {
  return {(m + m.adjoint()) * 0.5, (m - m.adjoint()) * Complex(0.0, -0.5)};
}

// Re(e^{it} M) = cos(t) H - sin(t) K.
std::pair<double, double> rotated_extremes(const RotatedParts& parts, double theta) {
  const ComplexMatrix x = std::cos(theta) * parts.hermitian - std::sin(theta) * parts.skew_hermitian;
  return hermitian_extreme_eigenvalues(x);
}

struct Interval {
  double lo, hi;
  double h_lo, h_hi;
};

// Largest value of (h_lo sin(hi - t) + h_hi sin(t - lo)) / sin(hi - lo) on [lo, hi].
double support_bound(const Interval& iv) {
  const double w = iv.hi - iv.lo;
  const double s = std::sin(w);
  double best = std::max(iv.h_lo, iv.h_hi);
  const double denom = iv.h_lo * s;
  if (denom == 0.0) return best;
  // Stationary points satisfy tan(t) = (h_hi - h_lo cos w) / (h_lo sin w).
  const double t0 = std::atan((iv.h_hi - iv.h_lo * std::cos(w)) / denom);
  for (double t : {t0, t0 + std::numbers::pi}) {
    if (t > 0.0 && t < w) {
      best = std::max(best, (iv.h_lo * std::sin(w - t) + iv.h_hi * std::sin(t)) / s);
    }
  }
  return best;
}

}  // namespace

double rotated_real_part_max(const ComplexMatrix& m, double theta) {
  return rotated_extremes(split(m), theta).second;
}

double numerical_radius(const ComplexMatrix& m, const NumericalRadiusOptions& options) {
  require_finite(m, "numerical_radius input");
  if (m.rows() != m.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "numerical_radius needs a square matrix");
  }
  if (m.rows() == 1) return std::abs(m(0, 0));
  if (max_abs(m) == 0.0) return 0.0;

  const int n = std::max(8, options.grid_points + (options.grid_points & 1));
  const double step = 2.0 * std::numbers::pi / n;
  const RotatedParts parts = split(m);

  // lambda_max at theta + pi equals -lambda_min at theta.
  std::vector<double> h(static_cast<std::size_t>(n));
  const int half = n / 2;
  for (int k = 0; k < half; ++k) {
    const auto [lo, hi] = rotated_extremes(parts, k * step);
    h[static_cast<std::size_t>(k)] = hi;
    h[static_cast<std::size_t>(k + half)] = -lo;
  }
  const auto top = std::max_element(h.begin(), h.end());
  double best = *top;
  double best_theta = static_cast<double>(top - h.begin()) * step;
  double best_width = step;

  // Phase 1: discard every arc whose support bound cannot beat the incumbent
  // by more than the pruning tolerance. A flat h (circular numerical range)
  // would otherwise need arcs of width ~sqrt(tolerance) everywhere.
  std::vector<Interval> stack;
  stack.reserve(64);
  for (int k = 0; k < n; ++k) {
    const auto next = static_cast<std::size_t>((k + 1) % n);
    stack.push_back({k * step, (k + 1) * step, h[static_cast<std::size_t>(k)], h[next]});
  }
  const double scale = max_abs(m);
  while (!stack.empty()) {
    const Interval iv = stack.back();
    stack.pop_back();
    const double slack_tol = options.prune_tol * std::max(best, scale);
    if (support_bound(iv) <= best + slack_tol) continue;
    if (iv.hi - iv.lo < options.angle_tol) continue;
    const double mid = 0.5 * (iv.lo + iv.hi);
    const double h_mid = rotated_extremes(parts, mid).second;
    if (h_mid > best) {
      best = h_mid;
      best_theta = mid;
      best_width = 0.5 * (iv.hi - iv.lo);
    }
    stack.push_back({iv.lo, mid, iv.h_lo, h_mid});
    stack.push_back({mid, iv.hi, h_mid, iv.h_hi});
  }

  // Phase 2: golden-section polish of the incumbent; h is smooth at a local
  // maximum, so the value error is quadratic in the angle error.
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = best_theta - best_width;
  double b = best_theta + best_width;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = rotated_extremes(parts, c).second;
  double fd = rotated_extremes(parts, d).second;
  while (b - a > options.angle_tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = rotated_extremes(parts, c).second;
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = rotated_extremes(parts, d).second;
    }
  }
  best = std::max({best, fc, fd});
  return std::max(best, 0.0);
}

}  // namespace shkit
