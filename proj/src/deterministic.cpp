#include "sdea/deterministic.hpp"

#include "model_common.hpp"
#include "sdea/core.hpp"
#include "sdea/errors.hpp"

namespace sdea {

namespace detail {

LinearProgram build_radial_lp(const Instance& in, Orientation orientation) {
  const auto& d = in.d;
  const int n = d.num_dmus();
  const bool input = orientation == Orientation::Input;
  auto p = LinearProgram::with_vars(n + 1, input ? Sense::Minimize : Sense::Maximize);
  p.objective[0] = 1.0;
  p.bounds[0] = VarBound::Free;
  p.var_names = stage1_names(input ? "theta" : "phi", n);
  for (int i = 0; i < d.num_inputs(); ++i) {
    Eigen::VectorXd row(n + 1);
    row << (input ? -d.inputs(i, in.o) : 0.0), d.inputs.row(i).transpose();
    p.add_row(std::move(row), Relation::LessEqual, input ? 0.0 : d.inputs(i, in.o));
  }
  for (int r = 0; r < d.num_outputs(); ++r) {
    Eigen::VectorXd row(n + 1);
    row << (input ? 0.0 : -d.outputs(r, in.o)), d.outputs.row(r).transpose();
    p.add_row(std::move(row), Relation::GreaterEqual, input ? d.outputs(r, in.o) : 0.0);
  }
  add_rts_rows(p, in.cfg.rts, 1, n, n + 1);
  return p;
}

ModelConfig radial_config(const ModelConfig& cfg, const Dataset& d, Orientation orientation) {
  ModelConfig out = cfg;
  const bool input = orientation == Orientation::Input;
  out.direction = StochasticDiagonal{
      Eigen::VectorXd::Constant(d.num_inputs(), input ? 1.0 : 0.0),
      Eigen::VectorXd::Constant(d.num_outputs(), input ? 0.0 : 1.0)};
  return out;
}

LinearProgram directional_stage1(const Instance& in) {
  const auto& d = in.d;
  const int n = d.num_dmus();
  auto p = LinearProgram::with_vars(n + 1, Sense::Maximize);
  p.objective[0] = 1.0;
  p.bounds[0] = VarBound::Free;
  p.var_names = stage1_names("beta", n);
  for (int i = 0; i < d.num_inputs(); ++i) {
    Eigen::VectorXd row(n + 1);
    row << in.g_minus[i], d.inputs.row(i).transpose();
    p.add_row(std::move(row), Relation::LessEqual, d.inputs(i, in.o));
  }
  for (int r = 0; r < d.num_outputs(); ++r) {
    Eigen::VectorXd row(n + 1);
    row << -in.g_plus[r], d.outputs.row(r).transpose();
    p.add_row(std::move(row), Relation::GreaterEqual, d.outputs(r, in.o));
  }
  add_rts_rows(p, in.cfg.rts, 1, n, n + 1);
  return p;
}

LinearProgram directional_stage2(const Instance& in, double beta) {
  const auto& d = in.d;
  const int n = d.num_dmus();
  const int m = d.num_inputs();
  const int s = d.num_outputs();
  const int nv = n + m + s;
  auto p = LinearProgram::with_vars(nv, Sense::Maximize);
  p.objective.segment(n, m) = in.w_minus;
  p.objective.segment(n + m, s) = in.w_plus;
  p.var_names = stage2_names(n, m, s);
  for (int i = 0; i < m; ++i) {
    Eigen::VectorXd row = Eigen::VectorXd::Zero(nv);
    row.head(n) = d.inputs.row(i).transpose();
    row[n + i] = 1.0;
    p.add_row(std::move(row), Relation::LessEqual, d.inputs(i, in.o) - beta * in.g_minus[i]);
  }
  for (int r = 0; r < s; ++r) {
    Eigen::VectorXd row = Eigen::VectorXd::Zero(nv);
    row.head(n) = d.outputs.row(r).transpose();
    row[n + m + r] = -1.0;
    p.add_row(std::move(row), Relation::GreaterEqual, d.outputs(r, in.o) + beta * in.g_plus[r]);
  }
  add_rts_rows(p, in.cfg.rts, 0, n, nv);
  return p;
}

}  // namespace detail

namespace {

// beta* >= 0 in exact arithmetic; clip roundoff below zero.
double clip_beta(double beta, double tol) { return beta < 0.0 && beta >= -tol ? 0.0 : beta; }

EvaluationResult second_stage(const detail::Instance& in, double beta, const SolveOutcome& first) {
  EvaluationResult res;
  res.beta_star = beta;
  res.stage1 = detail::stage_info(first);
  const auto r2 = solve_lp(detail::directional_stage2(in, beta), in.cfg.solver);
  res.stage2 = detail::stage_info(r2);
  detail::require_optimal(r2, "stage 2", "slack maximization");
  res.lambda_star = r2.x.head(in.d.num_dmus());
  detail::finish_result(res, in, false);
  return res;
}

}  // namespace

LinearProgram build_directional_stage1(const Dataset& d, const ModelConfig& cfg, int o) {
  return detail::directional_stage1(detail::make_instance(d, cfg, o));
}

LinearProgram build_directional_stage2(const Dataset& d, const ModelConfig& cfg, int o,
                                       double beta) {
  return detail::directional_stage2(detail::make_instance(d, cfg, o), beta);
}

EvaluationResult solve_directional(const Dataset& d, const ModelConfig& cfg, int o) {
  const auto in = detail::make_instance(d, cfg, o);
  const auto r1 = solve_lp(detail::directional_stage1(in), cfg.solver);
  if (r1.status == SolveStatus::Unbounded)
    throw ModelError("stage 1", "unbounded along the given direction");
  detail::require_optimal(r1, "stage 1", "beta maximization");
  return second_stage(in, clip_beta(r1.x[0], cfg.tol_eff), r1);
}

RadialResult solve_radial(const Dataset& d, const ModelConfig& cfg, int o,
                          Orientation orientation) {
  const auto rcfg = detail::radial_config(cfg, d, orientation);
  const auto in = detail::make_instance(d, rcfg, o);
  const auto r1 = solve_lp(detail::build_radial_lp(in, orientation), cfg.solver);
  if (r1.status == SolveStatus::Unbounded) throw ModelError("stage 1", "unbounded radial score");
  detail::require_optimal(r1, "stage 1", "radial score");
  RadialResult out;
  out.orientation = orientation;
  out.score = r1.x[0];
  const double beta = orientation == Orientation::Input ? 1.0 - out.score : out.score - 1.0;
  out.result = second_stage(in, clip_beta(beta, cfg.tol_eff), r1);
  return out;
}

double farrell_measure(const Dataset& d, int o, const ReturnsToScale& rts) {
  ModelConfig cfg = stochastic_config(Eigen::VectorXd::Ones(d.num_inputs()),
                                      Eigen::VectorXd::Ones(d.num_outputs()));
  cfg.rts = rts;
  const auto r1 = solve_lp(build_directional_stage1(d, cfg, o), cfg.solver);
  if (r1.status == SolveStatus::Unbounded)
    throw ModelError("stage 1", "unbounded along the given direction");
  detail::require_optimal(r1, "stage 1", "beta maximization");
  return clip_beta(r1.x[0], cfg.tol_eff);
}

}  // namespace sdea
