#include <doctest.h>

#include <cmath>
#include <set>

#include "shkit/catalog.hpp"
#include "shkit/error.hpp"
#include "shkit/generators.hpp"
#include "shkit/harness.hpp"

using namespace shkit;

namespace {

ComplexMatrix nilpotent() {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 1) = 1;
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

std::vector<ComplexMatrix> random_ops(const MetricSpace& s, std::size_t count, std::uint64_t seed) {
  std::vector<ComplexMatrix> out;
  for (std::size_t k = 0; k < count; ++k) out.push_back(gen_compatible(s, derive_seed(seed, k)).matrix());
  return out;
}

}  // namespace

TEST_CASE("registry contents") {
  const auto& reg = registry();
  CHECK(reg.size() == 25);
  std::set<std::string> ids;
  for (const BoundSpec& b : reg) {
    ids.insert(b.id);
    CHECK_FALSE(b.statement.empty());
  }
  CHECK(ids.size() == reg.size());
  CHECK(find_bound("thm101").uses_lambda);
  CHECK(find_bound("thm101").roles.size() == 4);
  CHECK(find_bound("sahoo1").direction == Direction::Lower);
  CHECK(find_bound("sahoo2").direction == Direction::Lower);
  CHECK(find_bound("them100_sharper").direction == Direction::Comparison);
  CHECK(find_bound("sk1").uses_sign);
  CHECK(kind_of([] { find_bound("nope"); }) == ErrorKind::UnknownBound);
}

TEST_CASE("evaluate_bound examples") {
  const MetricSpace id2 = make_space(ComplexMatrix::Identity(2, 2));
  const std::vector<ComplexMatrix> t{nilpotent()};
  const BoundResult r = evaluate_bound(id2, "refine1_upper", t);
  CHECK(r.lhs == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(r.rhs == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.holds);
  CHECK(r.operand_digest.size() == 16);

  // them10 is attained at P = S = O, R = Q.
  const MetricSpace s = gen_metric(4, 3, 2);
  for (std::uint64_t k = 0; k < 20; ++k) {
    const ComplexMatrix q = gen_compatible(s, k).matrix();
    const ComplexMatrix z = ComplexMatrix::Zero(4, 4);
    const std::vector<ComplexMatrix> ops{z, q, q, z};
    const BoundResult e = evaluate_bound(s, "them10", ops);
    CHECK(std::abs(e.slack) <= 1e-10 * (1 + e.rhs));
  }

  // sk1 with T = I and A = I: omega(2S) = 2 omega(S).
  Rng rng(3);
  const MetricSpace id3 = make_space(ComplexMatrix::Identity(3, 3));
  const std::vector<ComplexMatrix> ts{ComplexMatrix::Identity(3, 3), gaussian_matrix(3, 3, rng)};
  const BoundResult sk = evaluate_bound(id3, "sk1", ts, {std::nullopt, 1});
  CHECK(std::abs(sk.slack) <= 1e-10 * (1 + sk.rhs));

  for (double lambda : {0.0, 0.37, 1.0}) {
    const BoundResult th = evaluate_bound(s, "thm101", random_ops(s, 4, 9), {lambda, std::nullopt});
    CHECK(th.holds);
    CHECK(th.slack >= 0.0);
    CHECK(th.params.lambda == lambda);
  }
}

TEST_CASE("evaluate_bound errors") {
  const MetricSpace s = gen_metric(3, 2, 1);
  const auto ops = random_ops(s, 4, 1);
  CHECK(kind_of([&] { evaluate_bound(s, "unknown", ops); }) == ErrorKind::UnknownBound);
  CHECK(kind_of([&] { evaluate_bound(s, "thm101", ops); }) == ErrorKind::ParamOutOfDomain);
  CHECK(kind_of([&] { evaluate_bound(s, "thm101", ops, {1.5, std::nullopt}); }) == ErrorKind::ParamOutOfDomain);
  CHECK(kind_of([&] { evaluate_bound(s, "sk1", std::vector<ComplexMatrix>(ops.begin(), ops.begin() + 2)); }) ==
        ErrorKind::ParamOutOfDomain);
  CHECK(kind_of([&] { evaluate_bound(s, "them10", std::vector<ComplexMatrix>(ops.begin(), ops.begin() + 2)); }) ==
        ErrorKind::DimensionMismatch);
  std::vector<ComplexMatrix> bad = ops;
  bad[1] += s.range_basis() * s.null_basis().adjoint();
  CHECK(kind_of([&] { evaluate_bound(s, "them10", bad); }) == ErrorKind::NotCompatible);
  // QR != SP for unrelated operands.
  CHECK(kind_of([&] { evaluate_bound(s, "cor100_vs_kk2020", ops); }) == ErrorKind::PreconditionFailed);
}

TEST_CASE("evaluation is deterministic and memoisation is transparent") {
  const MetricSpace s = gen_metric(5, 4, 6);
  const auto ops = random_ops(s, 4, 6);
  BoundEvaluator shared(s);
  for (const std::string& id : all_bound_ids()) {
    const BoundSpec& spec = find_bound(id);
    std::vector<ComplexMatrix> use(ops.begin(), ops.begin() + static_cast<long>(spec.roles.size()));
    if (id == "cor100_vs_kk2020") use = {ops[0], ops[1], ops[0], ops[1]};
    const BoundParams params{spec.uses_lambda ? std::optional<double>(0.5) : std::nullopt,
                             spec.uses_sign ? std::optional<int>(-1) : std::nullopt};
    const BoundResult a = evaluate_bound(s, id, use, params);
    const BoundResult b = evaluate_bound(s, id, use, params);
    const BoundResult c = shared.evaluate(id, use, params);
    CHECK(a == b);
    CHECK(a == c);
  }
}

TEST_CASE("fuzzed soundness of every bound except sahoo1") {
  std::size_t evaluations = 0;
  for (std::uint64_t k = 0; k < 60; ++k) {
    const std::size_t n = 2 + k % 5;
    const std::size_t r = std::max<std::size_t>(1, n - k % 3);
    const MetricSpace s = gen_metric(n, r, derive_seed(500, k));
    BoundEvaluator ev(s);
    for (const std::string& id : all_bound_ids()) {
      if (id == "sahoo1") continue;
      const BoundSpec& spec = find_bound(id);
      const auto ops = trial_operands(s, id, derive_seed(501, k));
      for (const BoundParams& p : trial_params(spec, derive_seed(502, k))) {
        const BoundResult res = ev.evaluate(id, ops, p);
        INFO(id << " n=" << n << " r=" << r << " slack=" << res.slack);
        CHECK(res.holds);
        ++evaluations;
      }
    }
  }
  CHECK(evaluations > 60 * 24);
}

TEST_CASE("sahoo1 as stated fails for P = Q = I, A = I") {
  // omega[(I I; O O)] = (1 + sqrt2)/2, while beta/2 = (|1+i| + |1-i|)/2 = sqrt2.
  const MetricSpace id2 = make_space(ComplexMatrix::Identity(2, 2));
  const std::vector<ComplexMatrix> ops{ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(2, 2)};
  const BoundResult r = evaluate_bound(id2, "sahoo1", ops);
  CHECK(r.rhs == doctest::Approx((1 + std::sqrt(2.0)) / 2).epsilon(1e-12));
  CHECK(r.lhs == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK_FALSE(r.holds);
  // The max-based variant the argument supports does hold here.
  const BoundResult s3 = evaluate_bound(id2, "sahoo3", ops);
  CHECK(s3.holds);
}

TEST_CASE("compare_bounds") {
  const MetricSpace s = gen_metric(4, 3, 17);
  const std::vector<std::string> ids{"them10", "them100"};
  for (std::uint64_t k = 0; k < 10; ++k) {
    const auto res = compare_bounds(s, ids, random_ops(s, 4, 30 + k));
    REQUIRE(res.size() == 2);
    CHECK(res[0].bound_id == "them100");
  }
  const std::vector<ComplexMatrix> zeros(4, ComplexMatrix::Zero(4, 4));
  const std::vector<std::string> many{"upper3", "them10", "them100", "lm5"};
  const auto z = compare_bounds(s, many, zeros);
  CHECK(z[0].bound_id == "lm5");
  CHECK(z[1].bound_id == "them10");
  CHECK(z[2].bound_id == "them100");
  CHECK(z[3].bound_id == "upper3");
  for (const BoundResult& r : z) CHECK(r.rhs == 0.0);

  const auto ops = random_ops(s, 4, 70);
  const std::vector<ComplexMatrix> tied{ops[0], ops[1], ops[0], ops[1]};
  const std::vector<std::string> cor{"cor100", "kk2020"};
  const auto c = compare_bounds(s, cor, tied);
  const double cor100 = c[0].bound_id == "cor100" ? c[0].rhs : c[1].rhs;
  const double kk = c[0].bound_id == "kk2020" ? c[0].rhs : c[1].rhs;
  CHECK(cor100 <= kk * (1 + 1e-10));

  const std::vector<std::string> mixed{"them10", "ffirst"};
  CHECK(kind_of([&] { compare_bounds(s, mixed, ops); }) == ErrorKind::IncompatibleOperandRoles);
}
