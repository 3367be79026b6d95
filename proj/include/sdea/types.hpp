#pragma once

#include "sdea/program.hpp"

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace sdea {

// Mean data plus one DMU-by-DMU covariance matrix per variable.
// inputs is m x n, outputs is s x n (column j is DMU j).
struct Dataset {
  Eigen::MatrixXd inputs;
  Eigen::MatrixXd outputs;
  std::vector<Eigen::MatrixXd> input_cov;
  std::vector<Eigen::MatrixXd> output_cov;
  std::vector<std::string> dmu_names;
  std::vector<std::string> input_names;
  std::vector<std::string> output_names;

  int num_dmus() const { return static_cast<int>(inputs.cols()); }
  int num_inputs() const { return static_cast<int>(inputs.rows()); }
  int num_outputs() const { return static_cast<int>(outputs.rows()); }

  // Deterministic dataset: zero covariance everywhere, default names.
  static Dataset from_means(Eigen::MatrixXd inputs, Eigen::MatrixXd outputs);
};

namespace cov {
struct Zero {};
struct ScalarIdentity {
  double c = 0.0;  // standard deviation; variance is c^2
};
struct Diagonal {
  Eigen::VectorXd variances;
};
struct Full {
  Eigen::MatrixXd matrix;
};
}  // namespace cov

using CovarianceSpec = std::variant<cov::Zero, cov::ScalarIdentity, cov::Diagonal, cov::Full>;

// ScalarIdentity with c == 0 collapses to Zero.
CovarianceSpec canonical(const CovarianceSpec& spec);

// n x n covariance matrix described by `spec`. Throws std::invalid_argument
// on a size mismatch or negative variance.
Eigen::MatrixXd expand(const CovarianceSpec& spec, int n);

// Directions that scale with the evaluated DMU's own (random) data:
// g- = D- x_o, g+ = D+ y_o.
struct StochasticDiagonal {
  Eigen::VectorXd d_minus;
  Eigen::VectorXd d_plus;
};

// Fixed directions that stay deterministic under the stochastic data model.
struct DeterministicVector {
  Eigen::VectorXd g_minus;
  Eigen::VectorXd g_plus;
};

using DirectionSpec = std::variant<StochasticDiagonal, DeterministicVector>;

inline bool is_stochastic(const DirectionSpec& d) {
  return std::holds_alternative<StochasticDiagonal>(d);
}

enum class RtsKind { CRS, VRS, NIRS, NDRS, GRS };

struct ReturnsToScale {
  RtsKind kind = RtsKind::CRS;
  double lower = 0.0;  // GRS only
  double upper = 1.0;  // GRS only

  static ReturnsToScale crs() { return {}; }
  static ReturnsToScale vrs() { return {RtsKind::VRS}; }
  static ReturnsToScale nirs() { return {RtsKind::NIRS}; }
  static ReturnsToScale ndrs() { return {RtsKind::NDRS}; }
  static ReturnsToScale grs(double l, double u) { return {RtsKind::GRS, l, u}; }
};

std::string to_string(const ReturnsToScale& rts);

struct ModelConfig {
  DirectionSpec direction;
  // Empty vectors mean unit weights.
  Eigen::VectorXd w_minus;
  Eigen::VectorXd w_plus;
  ReturnsToScale rts;
  double alpha = 0.05;
  double tol_eff = 1e-6;
  SolverOptions solver;
};

// Throws ConfigError when `cfg` is inconsistent with `d` (dimension
// mismatch, negative or all-zero direction, a zero weight on a variable
// with a nonzero direction component, bad GRS bounds, alpha outside (0,1)).
void validate_config(const ModelConfig& cfg, const Dataset& d);

// Direction, weights and RTS shorthand constructors.
ModelConfig stochastic_config(Eigen::VectorXd d_minus, Eigen::VectorXd d_plus,
                              double alpha = 0.05);
ModelConfig deterministic_config(Eigen::VectorXd g_minus, Eigen::VectorXd g_plus,
                                 double alpha = 0.05);

enum class Efficiency { Efficient, WeaklyEfficient, Inefficient };

const char* to_string(Efficiency e);

struct StageInfo {
  SolveStatus status = SolveStatus::NumericalFailure;
  int iterations = 0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double wall_seconds = 0.0;
};

struct EvaluationResult {
  double beta_star = 0.0;
  Eigen::VectorXd lambda_star;
  Eigen::VectorXd s_minus_star;
  Eigen::VectorXd s_plus_star;
  double slack_objective = 0.0;
  Efficiency status = Efficiency::Inefficient;
  StageInfo stage1;
  StageInfo stage2;
  // Mean-data projection x_o - beta g- - s-, y_o + beta g+ + s+.
  Eigen::VectorXd projected_inputs;
  Eigen::VectorXd projected_outputs;
};

// Classification of a (beta*, slack objective) pair at threshold tol.
Efficiency classify(double beta_star, double slack_objective, double tol);

enum class Orientation { Input, Output };

struct RadialResult {
  EvaluationResult result;
  Orientation orientation = Orientation::Input;
  // theta = 1 - beta* (input) or phi = 1 + beta* (output).
  double score = 1.0;
};

}  // namespace sdea
