#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "shkit/catalog.hpp"

namespace shkit {

struct TrialConfig {
  std::size_t dim = 4;
  std::size_t rank = 4;
  std::size_t trials = 100;
  std::uint64_t master_seed = 0;
  double tol = kIdentityTol;
  std::vector<std::string> bound_ids;     // empty: every registered bound
  std::vector<std::string> identity_ids;  // empty: every identity
  bool skip_bounds = false;
  bool skip_identities = false;
  bool stress = false;                    // wider conditioning, tol >= 1e-6
  bool zero_operands = false;             // replace every operand by O
  unsigned threads = 0;                   // 0: SHKIT_THREADS or hardware
};

/// Throws BadRank, DimensionMismatch, UnknownBound or UnknownIdentity.
void validate(const TrialConfig& config);
/// Tolerance actually applied, after the stress relaxation.
double effective_tol(const TrialConfig& config);

struct BoundStats {
  std::size_t trials = 0;  // evaluations, counting each parameter choice
  std::size_t violations = 0;
  double min_slack = 0.0;
  double q50 = 0.0;  // quantiles of lhs / rhs (1 when rhs = 0)
  double q90 = 0.0;
  double q99 = 0.0;
};

struct IdentityStats {
  std::size_t trials = 0;
  double max_residual = 0.0;
  double threshold = 0.0;
  std::size_t violations = 0;
};

struct Counterexample {
  std::string kind;  // "bound" or "identity"
  std::string id;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  BoundParams params;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;     // bounds
  double residual = 0.0;  // identities
  ComplexMatrix metric;
  std::vector<std::string> roles;
  std::vector<ComplexMatrix> operands;
};

struct TrialFailure {
  std::size_t trial = 0;
  std::string id;
  std::string message;
};

struct VerificationReport {
  TrialConfig config;
  std::map<std::string, BoundStats> bounds;
  std::map<std::string, IdentityStats> identities;
  std::vector<Counterexample> counterexamples;
  std::vector<TrialFailure> failures;
  double wall_time = 0.0;  // seconds; not serialised

  std::size_t total_violations() const;
};

/// Runs every selected identity and bound on `trials` independently seeded
/// draws. Trials run in parallel; results are folded in trial order, so the
/// report does not depend on scheduling.
VerificationReport run_suite(const TrialConfig& config);

/// The operand tuple the harness feeds `bound_id` in a given trial.
std::vector<CompatibleOperator> trial_operands(const MetricSpace& space, std::string_view bound_id,
                                               std::uint64_t trial_seed, bool zero_operands = false);

/// Parameter choices evaluated per trial: lambda in {0, .25, .5, .75, 1}
/// plus three uniform draws, sign in {+1, -1}.
std::vector<BoundParams> trial_params(const BoundSpec& spec, std::uint64_t trial_seed);

}  // namespace shkit
