#include "sdea/chance_constrained.hpp"

#include "model_common.hpp"
#include "sdea/core.hpp"
#include "sdea/errors.hpp"

#include <cmath>

namespace sdea {

namespace {

struct Noise {
  std::vector<detail::RowNoise> rows;  // inputs, then outputs
};

Noise row_noise(const detail::Instance& in) {
  if (in.cfg.alpha > 0.5)
    throw ConfigError("alpha " + std::to_string(in.cfg.alpha) +
                      " > 0.5 is the nonconvex regime; use alpha in (0, 0.5]");
  const auto f = factor_covariances(in.d);
  const double q = std::abs(probit(in.cfg.alpha));
  Noise n;
  for (const auto& l : f.inputs) n.rows.push_back({l, q});
  for (const auto& l : f.outputs) n.rows.push_back({l, q});
  return n;
}

std::string row_label(const detail::Instance& in, int k) {
  const int m = in.d.num_inputs();
  return k < m ? "in" + std::to_string(k + 1) : "out" + std::to_string(k - m + 1);
}

// Replaces every noisy input/output row of `lp` by its cone. `kappa(k)`
// returns (k0, k1) for row k; t_col is the score column (-1: none).
template <class Kappa>
ConicProgram with_cones(LinearProgram lp, const detail::Instance& in, const Noise& noise,
                        int lambda_first, int t_col, Kappa kappa) {
  const int rows = in.d.num_inputs() + in.d.num_outputs();
  const int n = in.d.num_dmus();
  ConicProgram cp;
  std::vector<LinearRow> kept;
  for (int k = 0; k < static_cast<int>(lp.rows.size()); ++k) {
    if (k >= rows || noise.rows[k].degenerate()) {
      kept.push_back(lp.rows[k]);
      continue;
    }
    const auto [k0, k1] = kappa(k);
    cp.cones.push_back(detail::cone_from_row(lp.rows[k], noise.rows[k], in.o, lambda_first, n,
                                             t_col, k0, k1, row_label(in, k)));
  }
  lp.rows = std::move(kept);
  cp.linear = std::move(lp);
  return cp;
}

// (k0, k1) of lambda - (k0 + k1 beta) e_o in the directional rows.
std::pair<double, double> directional_kappa(const detail::Instance& in, int k) {
  const int m = in.d.num_inputs();
  const auto* s = std::get_if<StochasticDiagonal>(&in.cfg.direction);
  if (!s) return {1.0, 0.0};
  return k < m ? std::pair{1.0, -s->d_minus[k]} : std::pair{1.0, s->d_plus[k - m]};
}

ConicProgram stage1(const detail::Instance& in, const Noise& noise) {
  return with_cones(detail::directional_stage1(in), in, noise, 1, 0,
                    [&](int k) { return directional_kappa(in, k); });
}

ConicProgram stage2(const detail::Instance& in, const Noise& noise, double beta) {
  const int m = in.d.num_inputs();
  return with_cones(detail::directional_stage2(in, beta), in, noise, 0, -1, [&](int k) {
    const double kap = k < m ? input_kappa(in.cfg.direction, k, beta)
                             : output_kappa(in.cfg.direction, k - m, beta);
    return std::pair{kap, 0.0};
  });
}

SolveOutcome solve(const ConicProgram& p, const SolverOptions& opts) {
  return p.cones.empty() ? solve_lp(p.linear, opts) : solve_socp(p, opts);
}

double clip_beta(double beta, double tol) { return beta < 0.0 && beta >= -tol ? 0.0 : beta; }

EvaluationResult second_stage(const detail::Instance& in, const Noise& noise, double beta,
                              const SolveOutcome& first) {
  EvaluationResult res;
  res.beta_star = beta;
  res.stage1 = detail::stage_info(first);
  // beta* is only as exact as the interior point tolerances; if it lands
  // just past the optimum the frozen stage 2 is empty, so retreat slightly.
  SolveOutcome r2;
  for (double back : {0.0, 1e-9, 1e-8, 1e-7}) {
    r2 = solve(stage2(in, noise, beta - back * std::max(1.0, std::abs(beta))), in.cfg.solver);
    if (r2.optimal() || r2.status == SolveStatus::Unbounded) break;
  }
  res.stage2 = detail::stage_info(r2);
  detail::require_optimal(r2, "stage 2", "slack maximization");
  res.lambda_star = r2.x.head(in.d.num_dmus()).cwiseMax(0.0);
  detail::finish_result(res, in, true);
  return res;
}

void check_stage1(const SolveOutcome& r) {
  if (r.status == SolveStatus::Unbounded)
    throw ModelError("stage 1", "unbounded along the given direction");
  detail::require_optimal(r, "stage 1", "beta maximization");
}

}  // namespace

ConicProgram build_cc_stage1(const Dataset& d, const ModelConfig& cfg, int o) {
  const auto in = detail::make_instance(d, cfg, o);
  return stage1(in, row_noise(in));
}

ConicProgram build_cc_stage2(const Dataset& d, const ModelConfig& cfg, int o, double beta) {
  const auto in = detail::make_instance(d, cfg, o);
  return stage2(in, row_noise(in), beta);
}

EvaluationResult solve_cc_directional(const Dataset& d, const ModelConfig& cfg, int o) {
  const auto in = detail::make_instance(d, cfg, o);
  const auto noise = row_noise(in);
  const auto r1 = solve(stage1(in, noise), cfg.solver);
  check_stage1(r1);
  return second_stage(in, noise, clip_beta(r1.x[0], cfg.tol_eff), r1);
}

RadialResult solve_cc_radial(const Dataset& d, const ModelConfig& cfg, int o,
                             Orientation orientation) {
  const auto rcfg = detail::radial_config(cfg, d, orientation);
  const auto in = detail::make_instance(d, rcfg, o);
  const auto noise = row_noise(in);
  const int m = d.num_inputs();
  const bool input = orientation == Orientation::Input;
  // The scaled side carries t e_o, the other side e_o.
  const auto prog = with_cones(detail::build_radial_lp(in, orientation), in, noise, 1, 0,
                               [&](int k) {
                                 const bool scaled = (k < m) == input;
                                 return scaled ? std::pair{0.0, 1.0} : std::pair{1.0, 0.0};
                               });
  const auto r1 = solve(prog, cfg.solver);
  if (r1.status == SolveStatus::Unbounded) throw ModelError("stage 1", "unbounded radial score");
  detail::require_optimal(r1, "stage 1", "radial score");
  RadialResult out;
  out.orientation = orientation;
  out.score = r1.x[0];
  const double beta = input ? 1.0 - out.score : out.score - 1.0;
  out.result = second_stage(in, noise, clip_beta(beta, cfg.tol_eff), r1);
  return out;
}

double stochastic_farrell(const Dataset& d, int o, double alpha, const ReturnsToScale& rts) {
  ModelConfig cfg = stochastic_config(Eigen::VectorXd::Ones(d.num_inputs()),
                                      Eigen::VectorXd::Ones(d.num_outputs()), alpha);
  cfg.rts = rts;
  const auto in = detail::make_instance(d, cfg, o);
  const auto r1 = solve(stage1(in, row_noise(in)), cfg.solver);
  check_stage1(r1);
  return clip_beta(r1.x[0], cfg.tol_eff);
}

}  // namespace sdea
