#pragma once

#include "sdea/program.hpp"
#include "sdea/types.hpp"

namespace sdea {

// Deterministic equivalent of the chance-constrained directional model,
// variables (beta, lambda). Each input row i becomes
//   q || L_i' (lambda - k_i e_o) || <= x_io - beta g-_i - (X lambda)_i
// and each output row r
//   q || L_r' (lambda - k_r e_o) || <= (Y lambda)_r - y_ro - beta g+_r
// where q = |probit(alpha)|, L is the pivoted Cholesky factor of the
// variable's covariance, k_i = 1 - beta d-_i, k_r = 1 + beta d+_r for
// stochastic directions and k = 1 for deterministic ones. Rows with zero
// variance (or alpha = 0.5) stay linear, in the same form as
// build_directional_stage1. Throws ConfigError for alpha > 0.5.
ConicProgram build_cc_stage1(const Dataset& d, const ModelConfig& cfg, int o);

// Slack maximization at fixed beta, variables (lambda, s-, s+).
ConicProgram build_cc_stage2(const Dataset& d, const ModelConfig& cfg, int o, double beta);

EvaluationResult solve_cc_directional(const Dataset& d, const ModelConfig& cfg, int o);

// Chance-constrained input-oriented (theta) or output-oriented (phi)
// radial model in its own variables.
RadialResult solve_cc_radial(const Dataset& d, const ModelConfig& cfg, int o,
                             Orientation orientation);

// beta* of the chance-constrained model with D- = I, D+ = I (stage 1 only).
double stochastic_farrell(const Dataset& d, int o, double alpha = 0.05,
                          const ReturnsToScale& rts = {});

}  // namespace sdea
