#include "shkit/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <optional>
#include <thread>

#include "shkit/error.hpp"
#include "shkit/generators.hpp"
#include "shkit/identities.hpp"

namespace shkit {

namespace {

constexpr std::uint64_t kMetricStream = 1;
constexpr std::uint64_t kOperandStream = 2;
constexpr std::uint64_t kParamStream = 3;
constexpr std::uint64_t kIdentityStream = 4;

std::vector<std::string> selected_bounds(const TrialConfig& c) {
  if (c.skip_bounds) return {};
  return c.bound_ids.empty() ? all_bound_ids() : c.bound_ids;
}

std::vector<std::string> selected_identities(const TrialConfig& c) {
  if (c.skip_identities) return {};
  return c.identity_ids.empty() ? identity_ids() : c.identity_ids;
}

unsigned worker_count(const TrialConfig& c) {
  unsigned n = c.threads;
  if (n == 0) {
    if (const char* env = std::getenv("SHKIT_THREADS")) n = static_cast<unsigned>(std::strtoul(env, nullptr, 10));
  }
  if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(1, c.trials)));
}

struct BoundSample {
  std::string id;
  BoundResult result;
  std::vector<ComplexMatrix> operands;  // kept only on violation
};

struct IdentitySample {
  std::string id;
  double residual = 0.0;
  std::uint64_t seed = 0;
};

struct TrialOutcome {
  std::uint64_t seed = 0;
  ComplexMatrix metric;
  std::vector<BoundSample> bounds;
  std::vector<IdentitySample> identities;
  std::vector<TrialFailure> failures;
};

TrialOutcome run_trial(const TrialConfig& config, const std::vector<std::string>& bounds,
                       const std::vector<std::string>& identities, std::size_t index, double tol) {
  TrialOutcome out;
  out.seed = derive_seed(config.master_seed, index);
  std::optional<MetricSpace> space;
  try {
    space = gen_metric(config.dim, config.rank, derive_seed(out.seed, kMetricStream), config.stress);
    out.metric = space->metric();
  } catch (const std::exception& e) {
    out.failures.push_back({index, "gen_metric", e.what()});
    return out;
  }

  const std::uint64_t identity_seed = derive_seed(out.seed, kIdentityStream);
  for (std::size_t k = 0; k < identities.size(); ++k) {
    try {
      const std::uint64_t s = derive_seed(identity_seed, k);
      out.identities.push_back({identities[k], identity_residual(identities[k], *space, s), s});
    } catch (const std::exception& e) {
      out.failures.push_back({index, identities[k], e.what()});
    }
  }

  if (bounds.empty()) return out;
  BoundEvaluator evaluator(*space, tol);
  const std::uint64_t operand_seed = derive_seed(out.seed, kOperandStream);
  const std::uint64_t param_seed = derive_seed(out.seed, kParamStream);
  for (const std::string& id : bounds) {
    try {
      const BoundSpec& spec = find_bound(id);
      const std::vector<CompatibleOperator> ops =
          trial_operands(*space, id, operand_seed, config.zero_operands);
      for (const BoundParams& params : trial_params(spec, param_seed)) {
        BoundSample sample{id, evaluator.evaluate(id, ops, params), {}};
        if (!sample.result.holds) {
          for (const CompatibleOperator& op : ops) sample.operands.push_back(op.matrix());
        }
        out.bounds.push_back(std::move(sample));
      }
    } catch (const std::exception& e) {
      out.failures.push_back({index, id, e.what()});
    }
  }
  return out;
}

double nearest_rank(std::vector<double>& sorted, double p) {
  if (sorted.empty()) return 0.0;
  const auto n = static_cast<double>(sorted.size());
  auto idx = static_cast<std::size_t>(std::ceil(p * n));
  idx = std::clamp<std::size_t>(idx, 1, sorted.size()) - 1;
  return sorted[idx];
}

}  // namespace

void validate(const TrialConfig& config) {
  if (config.rank < 1 || config.rank > config.dim) {
    throw Error(ErrorKind::BadRank, "rank must satisfy 1 <= r <= n");
  }
  if (config.trials < 1) throw Error(ErrorKind::ParamOutOfDomain, "trials must be at least 1");
  if (!(config.tol >= 0.0) || !std::isfinite(config.tol)) {
    throw Error(ErrorKind::ParamOutOfDomain, "tol must be finite and nonnegative");
  }
  for (const std::string& id : config.bound_ids) find_bound(id);
  for (const std::string& id : config.identity_ids) require_identity(id);
}

double effective_tol(const TrialConfig& config) {
  return config.stress ? std::max(config.tol, 1e-6) : config.tol;
}

std::size_t VerificationReport::total_violations() const {
  std::size_t total = 0;
  for (const auto& [id, s] : bounds) total += s.violations;
  for (const auto& [id, s] : identities) total += s.violations;
  return total;
}

std::vector<CompatibleOperator> trial_operands(const MetricSpace& space, std::string_view bound_id,
                                               std::uint64_t trial_seed, bool zero_operands) {
  const BoundSpec& spec = find_bound(bound_id);
  std::vector<CompatibleOperator> pool;
  for (std::uint64_t k = 0; k < 4; ++k) {
    pool.push_back(zero_operands ? CompatibleOperator::zero(space)
                                 : gen_compatible(space, derive_seed(trial_seed, k)));
  }
  if (spec.id == "cor100_vs_kk2020") {
    // Q = S and R = P force QR = SP.
    return {pool[0], pool[1], pool[0], pool[1]};
  }
  pool.resize(spec.roles.size(), CompatibleOperator::zero(space));
  return pool;
}

std::vector<BoundParams> trial_params(const BoundSpec& spec, std::uint64_t trial_seed) {
  std::vector<std::optional<double>> lambdas{std::nullopt};
  if (spec.uses_lambda) {
    lambdas = {0.0, 0.25, 0.5, 0.75, 1.0};
    Rng rng(trial_seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int k = 0; k < 3; ++k) lambdas.push_back(unit(rng));
  }
  std::vector<std::optional<int>> signs{std::nullopt};
  if (spec.uses_sign) signs = {1, -1};
  std::vector<BoundParams> out;
  for (const auto& l : lambdas) {
    for (const auto& s : signs) out.push_back({l, s});
  }
  return out;
}

VerificationReport run_suite(const TrialConfig& config) {
  validate(config);
  const auto start = std::chrono::steady_clock::now();
  const double tol = effective_tol(config);
  const double threshold = std::max(kIdentityTol, tol);
  const std::vector<std::string> bounds = selected_bounds(config);
  const std::vector<std::string> identities = selected_identities(config);

  std::vector<TrialOutcome> outcomes(config.trials);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < config.trials; i = next++) {
      outcomes[i] = run_trial(config, bounds, identities, i, tol);
    }
  };
  const unsigned workers = worker_count(config);
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned k = 0; k < workers; ++k) pool.emplace_back(worker);
  }

  VerificationReport report;
  report.config = config;
  report.config.tol = tol;
  std::map<std::string, std::vector<double>> ratios;
  for (const std::string& id : bounds) {
    report.bounds[id].min_slack = std::numeric_limits<double>::infinity();
    ratios[id];
  }
  for (const std::string& id : identities) report.identities[id].threshold = threshold;

  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    TrialOutcome& t = outcomes[i];
    for (const IdentitySample& s : t.identities) {
      IdentityStats& st = report.identities[s.id];
      ++st.trials;
      st.max_residual = std::max(st.max_residual, s.residual);
      if (!(s.residual <= threshold)) {
        ++st.violations;
        Counterexample c;
        c.kind = "identity";
        c.id = s.id;
        c.trial = i;
        c.seed = s.seed;
        c.residual = s.residual;
        c.metric = t.metric;
        report.counterexamples.push_back(std::move(c));
      }
    }
    for (BoundSample& s : t.bounds) {
      BoundStats& st = report.bounds[s.id];
      const BoundResult& r = s.result;
      ++st.trials;
      st.min_slack = std::min(st.min_slack, r.slack);
      ratios[s.id].push_back(r.rhs == 0.0 ? 1.0 : r.lhs / r.rhs);
      if (!r.holds) {
        ++st.violations;
        Counterexample c;
        c.kind = "bound";
        c.id = s.id;
        c.trial = i;
        c.seed = t.seed;
        c.params = r.params;
        c.lhs = r.lhs;
        c.rhs = r.rhs;
        c.slack = r.slack;
        c.metric = t.metric;
        c.roles = find_bound(s.id).roles;
        c.operands = std::move(s.operands);
        report.counterexamples.push_back(std::move(c));
      }
    }
    for (TrialFailure& f : t.failures) report.failures.push_back(std::move(f));
  }
  for (auto& [id, values] : ratios) {
    std::sort(values.begin(), values.end());
    BoundStats& st = report.bounds[id];
    st.q50 = nearest_rank(values, 0.50);
    st.q90 = nearest_rank(values, 0.90);
    st.q99 = nearest_rank(values, 0.99);
  }
  report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace shkit
