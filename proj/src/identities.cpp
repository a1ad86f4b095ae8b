#include "shkit/identities.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "shkit/block_operator.hpp"
#include "shkit/error.hpp"
#include "shkit/generators.hpp"

namespace shkit {

namespace {

constexpr Complex kI{0.0, 1.0};

double rel(double a, double b) { return std::abs(a - b) / (1.0 + std::abs(b)); }

double rel(const ComplexMatrix& a, const ComplexMatrix& b) {
  return max_abs(a - b) / (1.0 + max_abs(b));
}

double zm_value(const CompatibleOperator& t, bool imaginary, double theta) {
  const CompatibleOperator rotated = std::polar(1.0, theta) * t;
  return a_op_norm(imaginary ? im_part(rotated) : re_part(rotated));
}

double golden_max(const CompatibleOperator& t, bool imaginary, double lo, double hi) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = zm_value(t, imaginary, c);
  double fd = zm_value(t, imaginary, d);
  while (b - a > 1e-9) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = zm_value(t, imaginary, c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = zm_value(t, imaginary, d);
    }
  }
  return std::max(fc, fd);
}

struct Draw {
  MetricSpace space;
  std::uint64_t seed;
  int next = 0;
  CompatibleOperator op() { return gen_compatible(space, derive_seed(seed, static_cast<std::uint64_t>(next++))); }
};

double check_diez(Draw& d) {
  const CompatibleOperator t = d.op();
  const CompatibleOperator ts = sharp(t);
  const double n = a_op_norm(t);
  const double n2 = n * n;
  const double ns = a_op_norm(ts);
  return std::max({rel(a_op_norm(ts * t), n2), rel(a_op_norm(t * ts), n2), rel(ns * ns, n2)});
}

double check_involution(Draw& d) {
  const CompatibleOperator t = d.op();
  const CompatibleOperator s1 = sharp(t);
  const CompatibleOperator s2 = sharp(s1);
  const CompatibleOperator s3 = sharp(s2);
  const ComplexMatrix& p = d.space.range_projector();
  return std::max(rel(s3.matrix(), s1.matrix()), rel(s2.matrix(), p * t.matrix() * p));
}

double check_product_rule(Draw& d) {
  const CompatibleOperator t = d.op();
  const CompatibleOperator s = d.op();
  return rel(sharp(t * s).matrix(), (sharp(s) * sharp(t)).matrix());
}

double check_zm(Draw& d) {
  const CompatibleOperator t = d.op();
  const double w = a_numerical_radius(t);
  return std::max(rel(zm_supremum(t, false), w), rel(zm_supremum(t, true), w));
}

double check_ll2020(Draw& d) {
  const CompatibleOperator t = re_part(d.op());
  const double n = a_op_norm(t);
  const double w = a_numerical_radius(t);
  const double r = a_spectral_radius(t);
  return std::max({rel(w, n), rel(r, n), rel(r, w)});
}

double check_commut(Draw& d) {
  const CompatibleOperator t = d.op();
  const CompatibleOperator s = d.op();
  return rel(a_spectral_radius(s * t), a_spectral_radius(t * s));
}

double check_weak(Draw& d) {
  const CompatibleOperator t = d.op();
  const CompatibleOperator u = gen_a_unitary(d.space, derive_seed(d.seed, 0xa11ce));
  return rel(a_numerical_radius(sharp(u) * t * u), a_numerical_radius(t));
}

double check_a5so(Draw& d) {
  const CompatibleOperator t = d.op();
  const CompatibleOperator s = d.op();
  return rel(a_op_norm(sharp(s) * t), a_op_norm(sharp(t) * s));
}

double check_lem100(Draw& d, bool rotated) {
  const CompatibleOperator t = d.op();
  const CompatibleOperator s = d.op();
  const Lifting lift(d.space);
  if (!rotated) {
    const double whole = a_numerical_radius(lift.assemble(t, s, s, t).op());
    return rel(whole, std::max(a_numerical_radius(t + s), a_numerical_radius(t - s)));
  }
  const double whole = a_numerical_radius(lift.assemble(t, -s, s, t).op());
  const CompatibleOperator is = kI * s;
  return rel(whole, std::max(a_numerical_radius(t + is), a_numerical_radius(t - is)));
}

double check_lemma1(Draw& d, int part) {
  const CompatibleOperator a = d.op();
  const CompatibleOperator b = d.op();
  const CompatibleOperator z = CompatibleOperator::zero(d.space);
  const Lifting lift(d.space);
  if (part == 1) {
    const double whole = a_numerical_radius(lift.assemble(a, z, z, b).op());
    return rel(whole, std::max(a_numerical_radius(a), a_numerical_radius(b)));
  }
  if (part == 2) {
    const double whole = a_op_norm(lift.assemble(z, a, b, z).op());
    return rel(whole, std::max(a_op_norm(a), a_op_norm(b)));
  }
  const CompatibleOperator c = d.op();
  const CompatibleOperator e = d.op();
  const BlockOperator m = lift.assemble(a, b, c, e);
  return rel(sharp(m.op()).matrix(), lift.sharp_transpose(m).op().matrix());
}

double check_p4200(std::uint64_t seed) {
  Rng rng(seed);
  std::uniform_int_distribution<int> order(2, 5);
  std::uniform_real_distribution<double> entry(0.0, 1.0);
  const int m = order(rng);
  Eigen::MatrixXd x(m, m);
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < m; ++i) x(i, j) = entry(rng);
  }
  const ComplexMatrix mc = x.cast<Complex>();
  const ComplexMatrix sym = (x + x.transpose()).cast<Complex>();
  return rel(numerical_radius(mc), 0.5 * spectral_radius(sym));
}

double check_sharp_invariance(Draw& d) {
  const CompatibleOperator t = d.op();
  return rel(a_numerical_radius(sharp(t)), a_numerical_radius(t));
}

double check_projected_invariance(Draw& d) {
  const CompatibleOperator t = d.op();
  const CompatibleOperator p = trusted_operator(d.space, d.space.range_projector());
  return rel(a_numerical_radius(p * t * p), a_numerical_radius(t));
}

}  // namespace

const std::vector<std::string>& identity_ids() {
  static const std::vector<std::string> ids{
      "diez",      "involution", "product_rule", "zm_cross_check", "ll2020",    "commut",
      "weak",      "a5so",       "lem100_i",     "lem100_ii",      "lemma1_i",  "lemma1_ii",
      "lemma1_iii", "p4200",     "sharp_invariance", "projected_invariance"};
  return ids;
}

void require_identity(std::string_view id) {
  const auto& ids = identity_ids();
  if (std::find(ids.begin(), ids.end(), id) == ids.end()) {
    throw Error(ErrorKind::UnknownIdentity, "no identity named '" + std::string(id) + "'");
  }
}

double zm_supremum(const CompatibleOperator& t, bool imaginary, int grid_points) {
  // ||Re_A(e^{i theta} T)||_A has period pi.
  const double step = std::numbers::pi / grid_points;
  std::vector<double> f(static_cast<std::size_t>(grid_points));
  for (int k = 0; k < grid_points; ++k) f[static_cast<std::size_t>(k)] = zm_value(t, imaginary, k * step);
  std::vector<int> peaks;
  for (int k = 0; k < grid_points; ++k) {
    const double prev = f[static_cast<std::size_t>((k + grid_points - 1) % grid_points)];
    const double next = f[static_cast<std::size_t>((k + 1) % grid_points)];
    const double here = f[static_cast<std::size_t>(k)];
    if (here >= prev && here >= next) peaks.push_back(k);
  }
  std::sort(peaks.begin(), peaks.end(), [&](int a, int b) {
    return f[static_cast<std::size_t>(a)] > f[static_cast<std::size_t>(b)];
  });
  double best = *std::max_element(f.begin(), f.end());
  for (std::size_t j = 0; j < std::min<std::size_t>(3, peaks.size()); ++j) {
    const double centre = peaks[j] * step;
    best = std::max(best, golden_max(t, imaginary, centre - step, centre + step));
  }
  return best;
}

double identity_residual(std::string_view id, const MetricSpace& space, std::uint64_t seed) {
  require_identity(id);
  Draw d{space, seed};
  if (id == "diez") return check_diez(d);
  if (id == "involution") return check_involution(d);
  if (id == "product_rule") return check_product_rule(d);
  if (id == "zm_cross_check") return check_zm(d);
  if (id == "ll2020") return check_ll2020(d);
  if (id == "commut") return check_commut(d);
  if (id == "weak") return check_weak(d);
  if (id == "a5so") return check_a5so(d);
  if (id == "lem100_i") return check_lem100(d, false);
  if (id == "lem100_ii") return check_lem100(d, true);
  if (id == "lemma1_i") return check_lemma1(d, 1);
  if (id == "lemma1_ii") return check_lemma1(d, 2);
  if (id == "lemma1_iii") return check_lemma1(d, 3);
  if (id == "p4200") return check_p4200(seed);
  if (id == "sharp_invariance") return check_sharp_invariance(d);
  return check_projected_invariance(d);
}

}  // namespace shkit
