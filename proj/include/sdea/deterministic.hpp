#pragma once

#include "sdea/program.hpp"
#include "sdea/types.hpp"

namespace sdea {

// Stage 1, variables (beta, lambda):
//   max beta  s.t.  beta g- + X lambda <= x_o,  -beta g+ + Y lambda >= y_o,
//   lambda >= 0, plus the returns-to-scale rows.
// Stochastic-diagonal directions are read as g- = D- x_o, g+ = D+ y_o.
LinearProgram build_directional_stage1(const Dataset& d, const ModelConfig& cfg, int o);

// Stage 2 at fixed beta, variables (lambda, s-, s+):
//   max w- s- + w+ s+  s.t.  X lambda + s- <= x_o - beta g-,
//   Y lambda - s+ >= y_o + beta g+, plus the returns-to-scale rows.
LinearProgram build_directional_stage2(const Dataset& d, const ModelConfig& cfg, int o,
                                       double beta);

// Two-stage directional evaluation of DMU o (0-based). Covariances are
// ignored. Throws ConfigError on bad input, ModelError when a stage fails.
EvaluationResult solve_directional(const Dataset& d, const ModelConfig& cfg, int o);

// Input-oriented (theta = 1 - beta*) or output-oriented (phi = 1 + beta*)
// CCR/BCC model, solved in its own theta/phi form. Direction in cfg is
// ignored; weights and RTS are used.
RadialResult solve_radial(const Dataset& d, const ModelConfig& cfg, int o,
                          Orientation orientation);

// beta* of the directional model with D- = I, D+ = I (stage 1 only).
double farrell_measure(const Dataset& d, int o, const ReturnsToScale& rts = {});

}  // namespace sdea
