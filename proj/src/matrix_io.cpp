#include "shkit/matrix_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "shkit/error.hpp"

namespace shkit {

using nlohmann::json;

json matrix_to_json(const ComplexMatrix& m) {
  json data = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
    data.push_back(std::move(row));
  }
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

namespace {

std::int64_t dimension(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer() || j[key].get<std::int64_t>() < 1) {
    throw Error(ErrorKind::Parse, std::string("\"") + key + "\" must be a positive integer");
  }
  return j[key].get<std::int64_t>();
}

}  // namespace

ComplexMatrix matrix_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorKind::Parse, "matrix file must be a JSON object");
  const std::int64_t rows = dimension(j, "rows");
  const std::int64_t cols = dimension(j, "cols");
  if (!j.contains("data") || !j["data"].is_array() || static_cast<std::int64_t>(j["data"].size()) != rows) {
    throw Error(ErrorKind::Parse, "\"data\" must be an array of " + std::to_string(rows) + " rows");
  }
  ComplexMatrix m(rows, cols);
  for (std::int64_t i = 0; i < rows; ++i) {
    const json& row = j["data"][static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<std::int64_t>(row.size()) != cols) {
      throw Error(ErrorKind::Parse, "row " + std::to_string(i) + " must hold " + std::to_string(cols) + " entries");
    }
    for (std::int64_t k = 0; k < cols; ++k) {
      const json& e = row[static_cast<std::size_t>(k)];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
        throw Error(ErrorKind::Parse, "entry (" + std::to_string(i) + ", " + std::to_string(k) +
                                          ") must be a [re, im] pair of numbers");
      }
      m(i, k) = Complex(e[0].get<double>(), e[1].get<double>());
    }
  }
  require_finite(m, "matrix file");
  return m;
}

ComplexMatrix parse_matrix(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, e.what());
  }
  return matrix_from_json(j);
}

ComplexMatrix read_matrix_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_matrix(buf.str());
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.what());
  }
}

std::string format_matrix(const ComplexMatrix& m) { return matrix_to_json(m).dump(2) + "\n"; }

json params_to_json(const BoundParams& p) {
  json out = json::object();
  if (p.lambda) out["lambda"] = *p.lambda;
  if (p.sign) out["sign"] = *p.sign;
  return out;
}

namespace {

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::string hex_seed(std::uint64_t seed) {
  char buf[19];
  std::snprintf(buf, sizeof buf, "0x%016llx", static_cast<unsigned long long>(seed));
  return buf;
}

}  // namespace

json report_to_json(const VerificationReport& report) {
  const TrialConfig& c = report.config;
  json config{{"dim", c.dim},
              {"rank", c.rank},
              {"trials", c.trials},
              {"master_seed", c.master_seed},
              {"tol", c.tol},
              {"bound_ids", c.bound_ids.empty() ? json("all") : json(c.bound_ids)},
              {"identity_ids", c.identity_ids.empty() ? json("all") : json(c.identity_ids)},
              {"skip_bounds", c.skip_bounds},
              {"skip_identities", c.skip_identities},
              {"stress", c.stress},
              {"zero_operands", c.zero_operands}};

  json bounds = json::object();
  for (const auto& [id, s] : report.bounds) {
    bounds[id] = {{"trials", s.trials},        {"violations", s.violations}, {"min_slack", finite_or_null(s.min_slack)},
                  {"q50", finite_or_null(s.q50)}, {"q90", finite_or_null(s.q90)}, {"q99", finite_or_null(s.q99)}};
  }
  json identities = json::object();
  for (const auto& [id, s] : report.identities) {
    identities[id] = {{"trials", s.trials},
                      {"max_residual", finite_or_null(s.max_residual)},
                      {"threshold", s.threshold},
                      {"violations", s.violations}};
  }
  json counterexamples = json::array();
  for (const Counterexample& ce : report.counterexamples) {
    json item{{"kind", ce.kind}, {"id", ce.id}, {"trial", ce.trial}, {"seed", hex_seed(ce.seed)},
              {"metric", matrix_to_json(ce.metric)}};
    if (ce.kind == "bound") {
      item["params"] = params_to_json(ce.params);
      item["lhs"] = finite_or_null(ce.lhs);
      item["rhs"] = finite_or_null(ce.rhs);
      item["slack"] = finite_or_null(ce.slack);
      json ops = json::object();
      for (std::size_t k = 0; k < ce.operands.size(); ++k) ops[ce.roles.at(k)] = matrix_to_json(ce.operands[k]);
      item["operands"] = std::move(ops);
    } else {
      item["residual"] = finite_or_null(ce.residual);
    }
    counterexamples.push_back(std::move(item));
  }
  json failures = json::array();
  for (const TrialFailure& f : report.failures) {
    failures.push_back({{"trial", f.trial}, {"id", f.id}, {"message", f.message}});
  }
  return json{{"config", std::move(config)},
              {"bounds", std::move(bounds)},
              {"identities", std::move(identities)},
              {"counterexamples", std::move(counterexamples)},
              {"failures", std::move(failures)}};
}

std::string format_report(const VerificationReport& report) { return report_to_json(report).dump(2) + "\n"; }

std::string results_to_csv(std::span<const BoundResult> results) {
  std::string out = "bound_id,lhs,rhs,slack\r\n";
  char buf[64];
  for (const BoundResult& r : results) {
    out += r.bound_id;
    for (double v : {r.lhs, r.rhs, r.slack}) {
      std::snprintf(buf, sizeof buf, ",%.17g", v);
      out += buf;
    }
    out += "\r\n";
  }
  return out;
}

std::string format_scalar(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%#.12g", value);
  return buf;
}

}  // namespace shkit
