// shkit command-line front end.
//
//   shkit compute {wa,norm,sr,sharp,compress} --metric A.json --op T.json
//   shkit verify --dim 4 --rank 3 --trials 200 --seed 42 --out report.json
//   shkit compare --bounds them10,them100 --metric A.json --ops P.json Q.json R.json S.json
//   shkit replay report.json
//
// Exit codes: 0 success, 1 verification found a violation or a trial failed,
// 2 usage, parse, dimension or compatibility error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "shkit/catalog.hpp"
#include "shkit/error.hpp"
#include "shkit/harness.hpp"
#include "shkit/matrix_io.hpp"

namespace {

using namespace shkit;

std::vector<std::string> split_ids(const std::string& list) {
  std::vector<std::string> out;
  if (list.empty() || list == "all") return out;
  std::stringstream in(list);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Parse, "cannot write " + path);
  out << text;
}

struct ComputeArgs {
  std::string what;
  std::string metric;
  std::string op;
  double rtol = kRankTol;
};

int run_compute(const ComputeArgs& a) {
  const MetricSpace space = make_space(read_matrix_file(a.metric), a.rtol);
  const CompatibleOperator t = CompatibleOperator::make(space, read_matrix_file(a.op), a.op);
  if (a.what == "wa") std::cout << format_scalar(a_numerical_radius(t)) << "\n";
  else if (a.what == "norm") std::cout << format_scalar(a_op_norm(t)) << "\n";
  else if (a.what == "sr") std::cout << format_scalar(a_spectral_radius(t)) << "\n";
  else if (a.what == "sharp") std::cout << format_matrix(sharp(t).matrix());
  else std::cout << format_matrix(t.compressed());
  return 0;
}

struct VerifyArgs {
  TrialConfig config;
  std::string bounds = "all";
  std::string identities = "all";
  std::string out;
};

int run_verify(VerifyArgs a) {
  a.config.skip_bounds = a.bounds == "none";
  a.config.skip_identities = a.identities == "none";
  if (!a.config.skip_bounds) a.config.bound_ids = split_ids(a.bounds);
  if (!a.config.skip_identities) a.config.identity_ids = split_ids(a.identities);
  const VerificationReport report = run_suite(a.config);
  write_output(a.out, format_report(report));
  const std::size_t violations = report.total_violations();
  std::fprintf(stderr, "%zu trials, %zu violations, %zu failures, %.2f s\n", a.config.trials, violations,
               report.failures.size(), report.wall_time);
  return violations == 0 && report.failures.empty() ? 0 : 1;
}

struct CompareArgs {
  std::string bounds;
  std::string metric;
  std::vector<std::string> ops;
  std::optional<double> lambda;
  std::optional<int> sign;
  std::string csv;
  double tol = kIdentityTol;
};

int run_compare(const CompareArgs& a) {
  const std::vector<std::string> ids = split_ids(a.bounds);
  if (ids.empty()) throw Error(ErrorKind::UnknownBound, "--bounds needs at least one id");
  const MetricSpace space = make_space(read_matrix_file(a.metric));
  std::vector<ComplexMatrix> ops;
  for (const std::string& path : a.ops) ops.push_back(read_matrix_file(path));
  const std::vector<BoundResult> results = compare_bounds(space, ids, ops, {a.lambda, a.sign}, a.tol);
  write_output(a.csv, results_to_csv(results));
  return 0;
}

struct ReplayArgs {
  std::string report;
  std::optional<std::size_t> index;
};

// Re-evaluates the bound counterexamples stored in a report.
int run_replay(const ReplayArgs& a) {
  std::ifstream in(a.report);
  if (!in) throw Error(ErrorKind::Parse, "cannot open " + a.report);
  nlohmann::json report;
  try {
    report = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, e.what());
  }
  const double tol = report.at("config").at("tol").get<double>();
  std::vector<BoundResult> results;
  const auto& items = report.at("counterexamples");
  for (std::size_t k = 0; k < items.size(); ++k) {
    if (a.index && *a.index != k) continue;
    const auto& ce = items[k];
    if (ce.at("kind") != "bound") continue;
    const std::string id = ce.at("id");
    const MetricSpace space = make_space(matrix_from_json(ce.at("metric")));
    std::vector<ComplexMatrix> ops;
    for (const std::string& role : find_bound(id).roles) ops.push_back(matrix_from_json(ce.at("operands").at(role)));
    BoundParams params;
    const auto& p = ce.at("params");
    if (p.contains("lambda")) params.lambda = p["lambda"].get<double>();
    if (p.contains("sign")) params.sign = p["sign"].get<int>();
    results.push_back(evaluate_bound(space, id, ops, params, tol));
  }
  std::cout << results_to_csv(results);
  for (const BoundResult& r : results) {
    if (!r.holds) return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical radius and norm inequalities on semi-Hilbert spaces"};
  app.require_subcommand(1);

  ComputeArgs compute;
  CLI::App* cmd_compute = app.add_subcommand("compute", "Evaluate one quantity of an operator");
  cmd_compute->add_option("quantity", compute.what, "wa, norm, sr, sharp or compress")
      ->required()
      ->check(CLI::IsMember({"wa", "norm", "sr", "sharp", "compress"}));
  cmd_compute->add_option("--metric", compute.metric, "MatrixFile holding A")->required();
  cmd_compute->add_option("--op", compute.op, "MatrixFile holding T")->required();
  cmd_compute->add_option("--rtol", compute.rtol, "relative rank tolerance")->capture_default_str();

  VerifyArgs verify;
  CLI::App* cmd_verify = app.add_subcommand("verify", "Run the randomized identity and bound suites");
  cmd_verify->add_option("--dim", verify.config.dim)->capture_default_str();
  cmd_verify->add_option("--rank", verify.config.rank)->capture_default_str();
  cmd_verify->add_option("--trials", verify.config.trials)->capture_default_str();
  cmd_verify->add_option("--seed", verify.config.master_seed)->capture_default_str();
  cmd_verify->add_option("--tol", verify.config.tol)->capture_default_str();
  cmd_verify->add_option("--bounds", verify.bounds, "comma-separated ids, 'all' or 'none'")->capture_default_str();
  cmd_verify->add_option("--identities", verify.identities, "comma-separated ids, 'all' or 'none'")
      ->capture_default_str();
  cmd_verify->add_option("--out", verify.out, "report path (default stdout)");
  cmd_verify->add_flag("--stress", verify.config.stress, "eigenvalue spread 1e8, tol >= 1e-6");
  cmd_verify->add_option("--threads", verify.config.threads, "worker threads (0: SHKIT_THREADS or hardware)");

  CompareArgs compare;
  CLI::App* cmd_compare = app.add_subcommand("compare", "Evaluate bounds sharing operand roles, sorted by rhs");
  cmd_compare->add_option("--bounds", compare.bounds, "comma-separated ids")->required();
  cmd_compare->add_option("--metric", compare.metric)->required();
  cmd_compare->add_option("--ops", compare.ops, "operand MatrixFiles in role order")->required();
  cmd_compare->add_option("--lambda", compare.lambda);
  cmd_compare->add_option("--sign", compare.sign);
  cmd_compare->add_option("--tol", compare.tol)->capture_default_str();
  cmd_compare->add_option("--csv", compare.csv, "CSV path (default stdout)");

  ReplayArgs replay;
  CLI::App* cmd_replay = app.add_subcommand("replay", "Re-evaluate bound counterexamples from a report");
  cmd_replay->add_option("report", replay.report, "report JSON written by verify")->required();
  cmd_replay->add_option("--index", replay.index, "only this counterexample");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*cmd_compute) return run_compute(compute);
    if (*cmd_verify) return run_verify(verify);
    if (*cmd_replay) return run_replay(replay);
    return run_compare(compare);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "shkit: %s\n", e.what());
    return 2;
  }
}
