#pragma once

#include "sdea/core.hpp"
#include "sdea/errors.hpp"
#include "sdea/program.hpp"
#include "sdea/types.hpp"

#include <optional>
#include <string>

namespace sdea::detail {

// Everything a builder needs about one evaluation.
struct Instance {
  const Dataset& d;
  const ModelConfig& cfg;
  int o;
  Eigen::VectorXd g_minus;  // mean direction
  Eigen::VectorXd g_plus;
  Eigen::VectorXd w_minus;
  Eigen::VectorXd w_plus;
};

Instance make_instance(const Dataset& d, const ModelConfig& cfg, int o);

// Appends the returns-to-scale rows on lambda, which occupies columns
// [first, first + n) of a program with `nvars` variables.
void add_rts_rows(LinearProgram& p, const ReturnsToScale& rts, int first, int n, int nvars);

// Names: beta|theta|phi, l1..ln, s-1.., s+1..
std::vector<std::string> stage1_names(const std::string& score, int n);
std::vector<std::string> stage2_names(int n, int m, int s);

// Data for the chance constraint of one row. `factor` is the pivoted
// Cholesky factor of that variable's covariance; `quantile` = |probit(alpha)|.
struct RowNoise {
  Eigen::MatrixXd factor;
  double quantile = 0.0;
  bool degenerate() const { return factor.cols() == 0 || quantile == 0.0; }
};

StageInfo stage_info(const SolveOutcome& r);

// Throws ModelError tagged with `stage` unless r is optimal.
void require_optimal(const SolveOutcome& r, const std::string& stage, const std::string& what);

// Assigns slacks from the equality form at (beta, lambda): the leftover of
// each row after subtracting the quantile-scaled standard deviation
// (zero when `noisy` is false). Fills slacks, slack objective,
// projection and classification.
void finish_result(EvaluationResult& res, const Instance& in, bool noisy);

// Chance-constrained version of a linear row whose random part is
// lambda - (k0 + k1 t) e_o for variable `t` at column t_col (-1: none).
// A `<=` row a'z <= rhs becomes q ||F'(.)|| <= rhs - a'z, a `>=` row
// a'z >= rhs becomes q ||F'(.)|| <= a'z - rhs.
SecondOrderCone cone_from_row(const LinearRow& row, const RowNoise& noise, int o,
                              int lambda_first, int n, int t_col, double k0, double k1,
                              std::string label);

// Directional stage-1 / stage-2 linear programs (see deterministic.hpp).
LinearProgram directional_stage1(const Instance& in);
LinearProgram directional_stage2(const Instance& in, double beta);

// Stage-1 program of the radial models in the theta (input: min theta)
// or phi (output: max phi) variables: z = (t, lambda).
LinearProgram build_radial_lp(const Instance& in, Orientation orientation);

// Radial orientation as a diagonal direction.
ModelConfig radial_config(const ModelConfig& cfg, const Dataset& d, Orientation orientation);

}  // namespace sdea::detail
