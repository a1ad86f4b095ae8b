#include "shkit/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <functional>

#include "shkit/error.hpp"

namespace shkit {

std::string_view to_string(Direction d) noexcept {
  switch (d) {
    case Direction::Upper: return "upper";
    case Direction::Lower: return "lower";
    case Direction::Comparison: return "comparison";
  }
  return "upper";
}

namespace {

using Op = CompatibleOperator;
using Ops = std::vector<Op>;

struct Sides {
  double lhs;
  double rhs;
};

struct Entry {
  BoundSpec spec;
  std::function<Sides(BoundEvaluator&, const Ops&, const BoundParams&)> eval;
};

const std::vector<std::string> kT{"T"};
const std::vector<std::string> kPQ{"P", "Q"};
const std::vector<std::string> kPR{"P", "R"};
const std::vector<std::string> kTS{"T", "S"};
const std::vector<std::string> kPQRS{"P", "Q", "R", "S"};

constexpr Complex kI{0.0, 1.0};

// (sqrt2/2) sqrt(a^2 + b^2 + sqrt((a^2 - b^2)^2 + 4 c^2)): sqrt of the top
// eigenvalue of [[a^2, c], [c, b^2]].
double row_pair_bound(double a, double b, double c) {
  const double a2 = a * a;
  const double b2 = b * b;
  return std::sqrt(0.5) * std::sqrt(a2 + b2 + std::sqrt((a2 - b2) * (a2 - b2) + 4.0 * c * c));
}

Op projector_op(const MetricSpace& space) {
  return trusted_operator(space, space.range_projector());
}

double thm101_rhs(BoundEvaluator& ev, const Ops& o, double lambda) {
  const Op& p = o[0];
  const Op& q = o[1];
  const Op& r = o[2];
  const Op& s = o[3];
  const Op ppsharp = p * sharp(p);
  const double first = ev.norm(Complex(lambda * lambda) * ppsharp + q * sharp(q));
  const double second = ev.norm(Complex((1 - lambda) * (1 - lambda)) * ppsharp + sharp(r) * r);
  return 0.5 * (ev.norm(p) + 2.0 * ev.omega(s) + std::sqrt(first) + std::sqrt(second));
}

double ineq106_rhs(BoundEvaluator& ev, const Op& p, const Op& q, const Op& r, const Op& s, double lambda) {
  const double wp = ev.omega(p);
  const double nq = ev.norm(q);
  const double nr = ev.norm(r);
  return 0.5 * (wp + 2.0 * ev.omega(s) + std::sqrt(lambda * lambda * wp * wp + nq * nq) +
                std::sqrt((1 - lambda) * (1 - lambda) * wp * wp + nr * nr));
}

double cor_pm_rhs(BoundEvaluator& ev, const Ops& o, double lambda) {
  const Op& p = o[0];
  const Op& q = o[1];
  const Op ppsharp = p * sharp(p);
  const double wp = ev.omega(p);
  const double nq = ev.norm(q);
  const double mu =
      wp + 0.5 * (ev.norm(p) + std::sqrt(ev.norm(Complex(lambda * lambda) * ppsharp + q * sharp(q))) +
                  std::sqrt(ev.norm(Complex((1 - lambda) * (1 - lambda)) * ppsharp + sharp(q) * q)));
  const double nu = 1.5 * wp + 0.5 * (std::sqrt(lambda * lambda * wp * wp + nq * nq) +
                                      std::sqrt((1 - lambda) * (1 - lambda) * wp * wp + nq * nq));
  return std::min(mu, nu);
}

double them10_rhs(BoundEvaluator& ev, const Ops& o) {
  const Op& p = o[0];
  const Op& q = o[1];
  const Op& r = o[2];
  const Op& s = o[3];
  return std::max(ev.omega(p), ev.omega(s)) + 0.5 * (ev.omega(q + r) + ev.omega(q - r));
}

double them100_rhs(BoundEvaluator& ev, const Ops& o) {
  const Op& p = o[0];
  const Op& q = o[1];
  const Op& r = o[2];
  const Op& s = o[3];
  const double wp = ev.omega(p);
  const double ws = ev.omega(s);
  const double off = ev.omega(q + r) + ev.omega(q - r);
  return 0.5 * (wp + ws + std::sqrt((wp - ws) * (wp - ws) + off * off));
}

double cor100_rhs(BoundEvaluator& ev, const Ops& o) {
  const Op& p = o[0];
  const Op& q = o[1];
  const Op& r = o[2];
  const Op& s = o[3];
  const double wqp = ev.omega(q * p);
  const double wsr = ev.omega(s * r);
  const Op qr = q * r;
  const Op sp = s * p;
  const double cross = ev.omega(qr + sp) + ev.omega(qr - sp);
  return 0.5 * (wqp + wsr) + 0.5 * std::sqrt((wqp - wsr) * (wqp - wsr) + cross * cross);
}

double kk2020_rhs(BoundEvaluator& ev, const Ops& o) {
  const Op& p = o[0];
  const Op& q = o[1];
  const Op& r = o[2];
  const Op& s = o[3];
  const double wqp = ev.omega(q * p);
  const double wsr = ev.omega(s * r);
  return 0.5 * (wqp + wsr) +
         0.5 * std::sqrt((wqp - wsr) * (wqp - wsr) + 4.0 * ev.norm(q * r) * ev.norm(s * p));
}

double cor100_lhs(BoundEvaluator& ev, const Ops& o) {
  return ev.spectral(o[0] * o[1] + o[2] * o[3]);
}

double whole(BoundEvaluator& ev, const Ops& o) {
  return ev.omega(ev.lifting().assemble(o[0], o[1], o[2], o[3]));
}

double top_row(BoundEvaluator& ev, const Op& p, const Op& q) {
  const Op z = Op::zero(p.space());
  return ev.omega(ev.lifting().assemble(p, q, z, z));
}

// Real 2x2 matrix of A-seminorms of the blocks.
Eigen::Matrix2d block_norms(BoundEvaluator& ev, const Ops& o) {
  Eigen::Matrix2d m;
  m << ev.norm(o[0]), ev.norm(o[1]), ev.norm(o[2]), ev.norm(o[3]);
  return m;
}

std::vector<Entry> build_registry() {
  std::vector<Entry> e;

  e.push_back({{"refine1_lower", kT, false, false, Direction::Lower,
                "||T||_A / 2 <= w_A(T)", ""},
               [](BoundEvaluator& ev, const Ops& o, const BoundParams&) {
                 return Sides{0.5 * ev.norm(o[0]), ev.omega(o[0])};
               }});

  e.push_back({{"refine1_upper", kT, false, false, Direction::Upper, "w_A(T) <= ||T||_A", ""},
               [](BoundEvaluator& ev, const Ops& o, const BoundParams&) {
                 return Sides{ev.omega(o[0]), ev.norm(o[0])};
               }});

  e.push_back({{"thm101", kPQRS, true, false, Direction::Upper,
                "w_AA[P Q; R S] <= (||P||_A + 2 w_A(S) + sqrt||l^2 PP# + QQ#||_A"
                " + sqrt||(1-l)^2 PP# + R#R||_A) / 2",
                ""},
               [](BoundEvaluator& ev, const Ops& o, const BoundParams& prm) {
                 return Sides{whole(ev, o), thm101_rhs(ev, o, *prm.lambda)};
               }});

  e.push_back({{"ineq106", kPQRS, true, false, Direction::Upper,
                "w_AA[P Q; R S] <= (w_A(P) + 2 w_A(S) + sqrt(l^2 w_A(P)^2 + ||Q||_A^2)"
                " + sqrt((1-l)^2 w_A(P)^2 + ||R||_A^2)) / 2",
                ""},
               [](BoundEvaluator& ev, const Ops& o, const BoundParams& prm) {
                 return Sides{whole(ev, o), ineq106_rhs(ev, o[0], o[1], o[2], o[3], *prm.lambda)};
               }});

  e.push_back({{"cor_pm_plus", kPQ, true, false, Direction::Upper,
                "w_A(P + Q) <= min{mu, nu}, mu = w_A(P) + (||P||_A + sqrt||l^2 PP# + QQ#||_A"
                " + sqrt||(1-l)^2 PP# + Q#Q||_A)/2, nu = 3/2 w_A(P) + (sqrt(l^2 w_A(P)^2 + ||Q||_A^2)"
                " + sqrt((1-l)^2 w_A(P)^2 + ||Q||_A^2))/2",
                ""},
               [](BoundEvaluator& ev, const Ops& o, const BoundParams& prm) {
                 return Sides{ev.omega(o[0] + o[1]), cor_pm_rhs(ev, o, *prm.lambda)};
               }});

  e.push_back({{"cor_pm_minus", kPQ, true, false, Direction::Upper,
                "w_A(P - Q) <= min{mu, nu} (same mu, nu as cor_pm_plus)", ""},
               [](BoundEvaluator& ev, const Ops& o, const BoundParams& prm) {
                 return Sides{ev.omega(o[0] - o[1]), cor_pm_rhs(ev, o, *prm.lambda)};
               }});

  e.push_back({{"them10", kPQRS, false, false, Direction::Upper,
                "w_AA[P Q; R S] <= max{w_A(P), w_A(S)} + (w_A(Q+R) + w_A(Q-R))/2", ""},
               [](BoundEvaluator& ev, const Ops& o, const BoundParams&) {
                 return Sides{whole(ev, o), them10_rhs(ev, o)};
               }});

  e.push_back({{"them100", kPQRS, false, false, Direction::Upper,
                "w_AA[P Q; R S] <= (w_A(P) + w_A(S) + sqrt((w_A(P) - w_A(S))^2"
                " + (w_A(Q+R) + w_A(Q-R))^2)) / 2",
                ""},
               [](BoundEvaluator& ev, const Ops& o, const BoundParams&) {
                 return Sides{whole(ev, o), them100_rhs(ev, o)};
               }});

  e.push_back({{"them100_sharper", kPQRS, false, false, Direction::Comparison,
                "rhs(them100) <= rhs(them10)", ""},
               [](BoundEvaluator& ev, const Ops& o, const BoundParams&) {
                 return Sides{them100_rhs(ev, o), them10_rhs(ev, o)};
               }});

  e.push_back({{"cor100", kPQRS, false, false, Direction::Upper,
                "r_A(PQ + RS) <= (w_A(QP) + w_A(SR))/2 + sqrt((w_A(QP) - w_A(SR))^2"
                " + (w_A(QR+SP) + w_A(QR-SP))^2)/2",
                ""},
               [](BoundEvaluator& ev, const Ops& o, const BoundParams&) {
                 return Sides{cor100_lhs(ev, o), cor100_rhs(ev, o)};
               }});

  e.push_back({{"kk2020", kPQRS, false, false, Direction::Upper,
                "r_A(PQ + RS) <= (w_A(QP) + w_A(SR))/2 + sqrt((w_A(QP) - w_A(SR))^2"
                " + 4 ||QR||_A ||SP||_A)/2",
                ""},
               [](BoundEvaluator& ev, const Ops& o, const BoundParams&) {
                 return Sides{cor100_lhs(ev, o), kk2020_rhs(ev, o)};
               }});

  e.push_back({{"cor100_vs_kk2020", kPQRS, false, false, Direction::Comparison,
                "rhs(cor100) <= rhs(kk2020)", "QR = SP"},
               [](BoundEvaluator& ev, const Ops& o, const BoundParams&) {
                 const Op qr = o[1] * o[2];
                 const Op sp = o[3] * o[0];
                 const double gap = ev.norm(qr - sp);
                 if (gap > ev.tol() * (1.0 + ev.norm(qr))) {
                   throw Error(ErrorKind::PreconditionFailed,
                               "cor100_vs_kk2020 needs QR = SP, ||QR - SP||_A = " + std::to_string(gap));
                 }
                 return Sides{cor100_rhs(ev, o), kk2020_rhs(ev, o)};
               }});

  e.push_back({{"remark_qsi", kPR, false, false, Direction::Upper,
                "r_A(P + R) <= (w_A(P) + w_A(R))/2 + sqrt((w_A(P) - w_A(R))^2"
                " + (w_A(P+R) + w_A(P-R))^2)/2",
                ""},
               [](BoundEvaluator& ev, const Ops& o, const BoundParams&) {
                 const Op& p = o[0];
                 const Op& r = o[1];
                 const double wp = ev.omega(p);
                 const double wr = ev.omega(r);
                 const double cross = ev.omega(p + r) + ev.omega(p - r);
                 return Sides{ev.spectral(p + r),
                              0.5 * (wp + wr) + 0.5 * std::sqrt((wp - wr) * (wp - wr) + cross * cross)};
               }});

  e.push_back({{"upper3", kPQRS, false, false, Direction::Upper,
                "w_AA[P Q; R S] <= min{g(P,Q,P#Q) + g(R,S,S#R), g(P,R,PR#) + g(Q,S,SQ#)},"
                " g(X,Y,Z) = (sqrt2/2) sqrt(||X||^2 + ||Y||^2 + sqrt((||X||^2 - ||Y||^2)^2 + 4||Z||^2))",
                ""},
               [](BoundEvaluator& ev, const Ops& o, const BoundParams&) {
                 const Op& p = o[0];
                 const Op& q = o[1];
                 const Op& r = o[2];
                 const Op& s = o[3];
                 const double np = ev.norm(p), nq = ev.norm(q), nr = ev.norm(r), ns = ev.norm(s);
                 const double mu = row_pair_bound(np, nq, ev.norm(sharp(p) * q)) +
                                   row_pair_bound(nr, ns, ev.norm(sharp(s) * r));
                 const double nu = row_pair_bound(np, nr, ev.norm(p * sharp(r))) +
                                   row_pair_bound(nq, ns, ev.norm(s * sharp(q)));
                 return Sides{whole(ev, o), std::min(mu, nu)};
               }});

  e.push_back({{"ffirst", kPQ, false, false, Direction::Upper,
                "w_AA[P Q; O O] <= (sqrt2/2) sqrt(||P||^2 + ||Q||^2 + sqrt((||P||^2 - ||Q||^2)^2"
                " + 4||P#Q||^2))",
                ""},
               [](BoundEvaluator& ev, const Ops& o, const BoundParams&) {
                 const Op& p = o[0];
                 const Op& q = o[1];
                 return Sides{top_row(ev, p, q), row_pair_bound(ev.norm(p), ev.norm(q), ev.norm(sharp(p) * q))};
               }});

  e.push_back({{"sahoo1", kPQ, false, false, Direction::Lower,
                "w_AA[P Q; O O] >= max{alpha, beta}/2, alpha = w_A(P+Q) + w_A(P-Q),"
                " beta = w_A(P+iQ) + w_A(P-iQ)",
                ""},
               [](BoundEvaluator& ev, const Ops& o, const BoundParams&) {
                 const Op& p = o[0];
                 const Op& q = o[1];
                 const Op iq = kI * q;
                 const double alpha = ev.omega(p + q) + ev.omega(p - q);
                 const double beta = ev.omega(p + iq) + ev.omega(p - iq);
                 return Sides{0.5 * std::max(alpha, beta), top_row(ev, p, q)};
               }});

  e.push_back({{"sk1", kTS, false, true, Direction::Upper,
                "w_A(TS +/- ST#) <= 2 ||T||_A w_A(S)", ""},
               [](BoundEvaluator& ev, const Ops& o, const BoundParams& prm) {
                 const Op& t = o[0];
                 const Op& s = o[1];
                 const Op mixed = t * s + Complex(*prm.sign) * (s * sharp(t));
                 return Sides{ev.omega(mixed), 2.0 * ev.norm(t) * ev.omega(s)};
               }});

  e.push_back({{"sahoo3", kPQ, false, false, Direction::Lower,
                "w_AA[P Q; O O] >= max{w_A(P+iQ), w_A(P-iQ)}/2", ""},
               [](BoundEvaluator& ev, const Ops& o, const BoundParams&) {
                 const Op& p = o[0];
                 const Op iq = kI * o[1];
                 return Sides{0.5 * std::max(ev.omega(p + iq), ev.omega(p - iq)), top_row(ev, p, o[1])};
               }});

  e.push_back({{"f12", kT, false, false, Direction::Upper,
                "w_A(T) <= 2 min{w_AA[Re_A(T) O; Im_A(T) O], w_AA[O -iIm_A(T); Re_A(T) O]},"
                " with w_A(T) evaluated on P_R T P_R",
                ""},
               [](BoundEvaluator& ev, const Ops& o, const BoundParams&) {
                 const Op& t = o[0];
                 const Op proj = projector_op(t.space());
                 const Op re = re_part(t);
                 const Op im = im_part(t);
                 const Op z = Op::zero(t.space());
                 const double first = ev.omega(ev.lifting().assemble(re, z, im, z));
                 const double second = ev.omega(ev.lifting().assemble(z, -kI * im, re, z));
                 return Sides{ev.omega(proj * t * proj), 2.0 * std::min(first, second)};
               }});

  e.push_back({{"lemf", kTS, false, true, Direction::Upper,
                "w_A(T +/- iS) <= 2 w_AA[O T; iS O]", ""},
               [](BoundEvaluator& ev, const Ops& o, const BoundParams& prm) {
                 const Op& t = o[0];
                 const Op is = kI * o[1];
                 const Op z = Op::zero(t.space());
                 return Sides{ev.omega(t + Complex(*prm.sign) * is),
                              2.0 * ev.omega(ev.lifting().assemble(z, t, is, z))};
               }});

  e.push_back({{"c2", kTS, false, false, Direction::Upper,
                "max{w_A(T + S), w_A(T - S)} <= 2 w_AA[O T; S O]", ""},
               [](BoundEvaluator& ev, const Ops& o, const BoundParams&) {
                 const Op& t = o[0];
                 const Op& s = o[1];
                 const Op z = Op::zero(t.space());
                 return Sides{std::max(ev.omega(t + s), ev.omega(t - s)),
                              2.0 * ev.omega(ev.lifting().assemble(z, t, s, z))};
               }});

  e.push_back({{"sahoo2", kPQRS, false, false, Direction::Lower,
                "w_AA[P Q; R S] >= max{mu, nu}/2, mu = max{w_A(Q+R+S+P), w_A(Q+R-S-P)},"
                " nu = max{w_A(Q-R+i(S+P)), w_A(Q-R-i(S+P))}",
                ""},
               [](BoundEvaluator& ev, const Ops& o, const BoundParams&) {
                 const Op& p = o[0];
                 const Op& q = o[1];
                 const Op& r = o[2];
                 const Op& s = o[3];
                 const Op diag = s + p;
                 const Op mu_base = q + r;
                 const Op nu_base = q - r;
                 const Op idiag = kI * diag;
                 const double mu = std::max(ev.omega(mu_base + diag), ev.omega(mu_base - diag));
                 const double nu = std::max(ev.omega(nu_base + idiag), ev.omega(nu_base - idiag));
                 return Sides{0.5 * std::max(mu, nu), whole(ev, o)};
               }});

  e.push_back({{"lm5", kPQRS, false, false, Direction::Upper,
                "r_AA[P Q; R S] <= r([||P||_A ||Q||_A; ||R||_A ||S||_A])", ""},
               [](BoundEvaluator& ev, const Ops& o, const BoundParams&) {
                 const Eigen::Matrix2d m = block_norms(ev, o);
                 const double rho = spectral_radius(ComplexMatrix(m.cast<Complex>()));
                 return Sides{ev.spectral(ev.lifting().assemble(o[0], o[1], o[2], o[3])), rho};
               }});

  e.push_back({{"lmm05", kPQRS, false, false, Direction::Upper,
                "||[P Q; R S]||_AA <= ||[||P||_A ||Q||_A; ||R||_A ||S||_A]||", ""},
               [](BoundEvaluator& ev, const Ops& o, const BoundParams&) {
                 const Eigen::Matrix2d m = block_norms(ev, o);
                 const double top = largest_singular_value(ComplexMatrix(m.cast<Complex>()));
                 return Sides{ev.norm(ev.lifting().assemble(o[0], o[1], o[2], o[3])), top};
               }});

  e.push_back({{"kkkk2020", kT, false, false, Direction::Upper, "r_A(T) <= w_A(T)", ""},
               [](BoundEvaluator& ev, const Ops& o, const BoundParams&) {
                 return Sides{ev.spectral(o[0]), ev.omega(o[0])};
               }});

  return e;
}

const std::vector<Entry>& entries() {
  static const std::vector<Entry> table = build_registry();
  return table;
}

const Entry& find_entry(std::string_view id) {
  for (const Entry& e : entries()) {
    if (e.spec.id == id) return e;
  }
  throw Error(ErrorKind::UnknownBound, "no registered bound named '" + std::string(id) + "'");
}

BoundParams validated_params(const BoundSpec& spec, const BoundParams& params) {
  BoundParams used;
  if (spec.uses_lambda) {
    if (!params.lambda) {
      throw Error(ErrorKind::ParamOutOfDomain, spec.id + " requires lambda in [0, 1]");
    }
    const double l = *params.lambda;
    if (!std::isfinite(l) || l < 0.0 || l > 1.0) {
      throw Error(ErrorKind::ParamOutOfDomain, spec.id + ": lambda " + std::to_string(l) + " not in [0, 1]");
    }
    used.lambda = l;
  }
  if (spec.uses_sign) {
    const int sign = params.sign.value_or(0);
    if (sign != 1 && sign != -1) {
      throw Error(ErrorKind::ParamOutOfDomain, spec.id + " requires sign +1 or -1");
    }
    used.sign = sign;
  }
  return used;
}

void fnv_bytes(std::uint64_t& h, const void* data, std::size_t size) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < size; ++i) {
    h ^= bytes[i];
    h *= 0x100000001b3ULL;
  }
}

void fnv_matrix(std::uint64_t& h, const ComplexMatrix& m) {
  const std::int64_t dims[2] = {m.rows(), m.cols()};
  fnv_bytes(h, dims, sizeof dims);
  fnv_bytes(h, m.data(), static_cast<std::size_t>(m.size()) * sizeof(Complex));
}

}  // namespace

const std::vector<BoundSpec>& registry() {
  static const std::vector<BoundSpec> specs = [] {
    std::vector<BoundSpec> out;
    for (const Entry& e : entries()) out.push_back(e.spec);
    return out;
  }();
  return specs;
}

const BoundSpec& find_bound(std::string_view id) { return find_entry(id).spec; }

std::vector<std::string> all_bound_ids() {
  std::vector<std::string> ids;
  for (const BoundSpec& s : registry()) ids.push_back(s.id);
  return ids;
}

std::string operand_digest(const MetricSpace& space, std::span<const CompatibleOperator> operands,
                           const BoundParams& params) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  fnv_matrix(h, space.metric());
  for (const CompatibleOperator& op : operands) fnv_matrix(h, op.matrix());
  if (params.lambda) fnv_bytes(h, &*params.lambda, sizeof(double));
  if (params.sign) fnv_bytes(h, &*params.sign, sizeof(int));
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

BoundEvaluator::BoundEvaluator(const MetricSpace& space, double tol) : BoundEvaluator(Lifting(space), tol) {}

BoundEvaluator::BoundEvaluator(Lifting lifting, double tol) : lifting_(std::move(lifting)), tol_(tol) {}

double BoundEvaluator::memo(char kind, const CompatibleOperator& t) {
  const ComplexMatrix& m = t.matrix();
  std::string key(1, kind);
  key.append(reinterpret_cast<const char*>(m.data()), static_cast<std::size_t>(m.size()) * sizeof(Complex));
  key.push_back(t.space().same_as(lifting_.lifted()) ? 'L' : 'B');
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  double value = 0.0;
  switch (kind) {
    case 'w': value = a_numerical_radius(t); break;
    case 'n': value = a_op_norm(t); break;
    default: value = a_spectral_radius(t); break;
  }
  cache_.emplace(std::move(key), value);
  return value;
}

double BoundEvaluator::omega(const CompatibleOperator& t) { return memo('w', t); }
double BoundEvaluator::norm(const CompatibleOperator& t) { return memo('n', t); }
double BoundEvaluator::spectral(const CompatibleOperator& t) { return memo('r', t); }

BoundResult BoundEvaluator::evaluate(std::string_view id, std::span<const ComplexMatrix> operands,
                                     const BoundParams& params) {
  const Entry& entry = find_entry(id);
  if (operands.size() != entry.spec.roles.size()) {
    throw Error(ErrorKind::DimensionMismatch, entry.spec.id + " expects " +
                                                  std::to_string(entry.spec.roles.size()) + " operands, got " +
                                                  std::to_string(operands.size()));
  }
  Ops ops;
  ops.reserve(operands.size());
  for (std::size_t k = 0; k < operands.size(); ++k) {
    ops.push_back(CompatibleOperator::make(lifting_.base(), operands[k], "operand " + entry.spec.roles[k]));
  }
  return evaluate(id, std::span<const CompatibleOperator>(ops), params);
}

BoundResult BoundEvaluator::evaluate(std::string_view id, std::span<const CompatibleOperator> operands,
                                     const BoundParams& params) {
  const Entry& entry = find_entry(id);
  const BoundSpec& spec = entry.spec;
  if (operands.size() != spec.roles.size()) {
    throw Error(ErrorKind::DimensionMismatch, spec.id + " expects " + std::to_string(spec.roles.size()) +
                                                  " operands, got " + std::to_string(operands.size()));
  }
  for (const CompatibleOperator& op : operands) {
    if (!op.space().same_as(lifting_.base())) {
      throw Error(ErrorKind::DimensionMismatch, spec.id + ": operand lives on a different metric space");
    }
  }
  const BoundParams used = validated_params(spec, params);
  const Ops ops(operands.begin(), operands.end());
  const Sides sides = entry.eval(*this, ops, used);

  BoundResult result;
  result.bound_id = spec.id;
  result.lhs = sides.lhs;
  result.rhs = sides.rhs;
  result.slack = sides.rhs - sides.lhs;
  result.holds = result.slack >= -tol_ * (1.0 + std::abs(result.rhs));
  result.operand_digest = operand_digest(lifting_.base(), operands, used);
  result.params = used;
  return result;
}

BoundResult evaluate_bound(const MetricSpace& space, std::string_view id, std::span<const ComplexMatrix> operands,
                           const BoundParams& params, double tol) {
  find_entry(id);
  BoundEvaluator ev(space, tol);
  return ev.evaluate(id, operands, params);
}

std::vector<BoundResult> compare_bounds(const MetricSpace& space, std::span<const std::string> ids,
                                        std::span<const ComplexMatrix> operands, const BoundParams& params,
                                        double tol) {
  if (ids.empty()) return {};
  const BoundSpec& first = find_bound(ids.front());
  for (const std::string& id : ids) {
    const BoundSpec& spec = find_bound(id);
    if (spec.roles != first.roles) {
      throw Error(ErrorKind::IncompatibleOperandRoles,
                  spec.id + " and " + first.id + " take different operand roles");
    }
  }
  BoundEvaluator ev(space, tol);
  std::vector<BoundResult> out;
  out.reserve(ids.size());
  for (const std::string& id : ids) out.push_back(ev.evaluate(id, operands, params));
  std::sort(out.begin(), out.end(), [](const BoundResult& a, const BoundResult& b) {
    if (a.rhs != b.rhs) return a.rhs < b.rhs;
    return a.bound_id < b.bound_id;
  });
  return out;
}

}  // namespace shkit
