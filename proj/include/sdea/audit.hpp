#pragma once

#include "sdea/types.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

namespace sdea {

// Draws of the data model. inputs[i] is N x n: row t is scenario t of
// input i across all DMUs (mean + factor * z, z standard normal).
struct ScenarioBatch {
  long count = 0;
  std::uint64_t seed = 0;
  std::vector<Eigen::MatrixXd> inputs;
  std::vector<Eigen::MatrixXd> outputs;
  std::vector<Eigen::MatrixXd> input_factors;
  std::vector<Eigen::MatrixXd> output_factors;
};

// Normal draws are Box-Muller pairs over mt19937_64, uniforms built from
// the top 53 bits. Variables are filled inputs first, each scenario
// consuming rank(factor) normals, so a batch is reproducible everywhere.
ScenarioBatch sample_scenarios(const Dataset& d, long count, std::uint64_t seed);

struct RowAudit {
  std::string label;  // in1.., out1..
  double p_hat = 0.0;
  double std_error = 0.0;  // sqrt(p_hat (1 - p_hat) / N)
  double threshold = 0.0;  // 1 - alpha - 3 std_error
  bool pass = false;
};

struct AuditReport {
  int dmu = 0;
  double alpha = 0.05;
  long count = 0;
  std::uint64_t seed = 0;
  std::vector<RowAudit> rows;  // inputs, then outputs
  double joint = 0.0;          // fraction of scenarios meeting every row (not gated)

  bool all_pass() const;
};

// Evaluates each constraint row at (beta*, lambda*, s*) in every scenario.
// Stochastic directions realize with the scenario's own data, deterministic
// ones stay fixed; slacks are held at their optimal values. A row counts as
// met when its value is >= -1e-7 (1 + |x_io| or |y_ro|), absorbing solver
// round-off at rows that are tight on the mean data.
AuditReport audit_solution(const EvaluationResult& result, const Dataset& d,
                           const ModelConfig& cfg, int o, const ScenarioBatch& batch);

}  // namespace sdea
