#pragma once

#include "sdea/types.hpp"

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace sdea {

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

enum class IssueKind {
  NonPositiveMean,
  DimensionMismatch,
  AsymmetricCovariance,
  NotPsdCovariance,
  NonFinite,
};

enum class VariableSide { Input, Output };

struct ValidationIssue {
  IssueKind kind;
  VariableSide side;
  int variable = -1;  // 0-based; -1 when not tied to one variable
  int dmu = -1;       // 0-based; -1 when not tied to one DMU
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;

  bool ok() const { return issues.empty(); }
  std::string summary() const;
};

// Lists every violated dataset invariant. Messages use 1-based indices,
// e.g. "non-positive mean input (1,1)".
ValidationReport validate_dataset(const Dataset& d);

// ---------------------------------------------------------------------------
// Pivoted Cholesky
// ---------------------------------------------------------------------------

// Sigma = factor * factor'. factor is n x rank with rows in the original
// order (the pivoting permutation is already applied).
struct CovarianceFactor {
  Eigen::MatrixXd factor;
  bool psd = true;
  double min_pivot = 0.0;  // most negative leftover diagonal when !psd

  int rank() const { return static_cast<int>(factor.cols()); }
};

// Outer-product Cholesky with diagonal pivoting. Stops once the largest
// remaining pivot falls below tol * max(1, max diag); the leftover Schur
// complement must then be negligible, otherwise the matrix is flagged
// as not PSD.
CovarianceFactor pivoted_cholesky(const Eigen::MatrixXd& sigma, double tol = 1e-10);

// Factors of every input and output covariance matrix, inputs first.
struct DatasetFactors {
  std::vector<Eigen::MatrixXd> inputs;
  std::vector<Eigen::MatrixXd> outputs;
};

DatasetFactors factor_covariances(const Dataset& d);

// ---------------------------------------------------------------------------
// Constraint standard deviations
// ---------------------------------------------------------------------------

// Multiplier of e_o inside the variance of input row i:
//   1 - beta d-_i for stochastic directions, 1 for deterministic ones.
double input_kappa(const DirectionSpec& dir, int i, double beta);
// 1 + beta d+_r for stochastic directions, 1 for deterministic ones.
double output_kappa(const DirectionSpec& dir, int r, double beta);

// Standard deviation of the i-th input row (Theta-(beta) x_o - X lambda)_i
// under the stochastic data model: || L_i' (lambda - kappa e_o) ||.
double sigma_minus(int i, double beta, const Eigen::VectorXd& lambda, const ModelConfig& cfg,
                   const Dataset& d, int o);

// Standard deviation of the r-th output row (Y lambda - Theta+(beta) y_o)_r.
double sigma_plus(int r, double beta, const Eigen::VectorXd& lambda, const ModelConfig& cfg,
                  const Dataset& d, int o);

// ---------------------------------------------------------------------------
// Association and quantiles
// ---------------------------------------------------------------------------

// Stochastic diagonal (d-, d+) <-> deterministic (D- x_o, D+ y_o).
// Everything but the direction is carried over unchanged.
ModelConfig associate(const ModelConfig& cfg, const Dataset& d, int o);

// Mean direction vectors (g-, g+) for DMU o.
std::pair<Eigen::VectorXd, Eigen::VectorXd> mean_direction(const DirectionSpec& dir,
                                                           const Dataset& d, int o);

// Inverse standard normal CDF (Wichura AS241, PPND16). Throws
// std::domain_error outside (0, 1).
double probit(double p);

// Standard normal CDF.
double normal_cdf(double z);

}  // namespace sdea
