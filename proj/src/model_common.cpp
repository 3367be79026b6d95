#include "model_common.hpp"

#include <algorithm>

namespace sdea::detail {

Instance make_instance(const Dataset& d, const ModelConfig& cfg, int o) {
  if (o < 0 || o >= d.num_dmus())
    throw ConfigError("DMU index " + std::to_string(o + 1) + " out of range 1.." +
                      std::to_string(d.num_dmus()));
  validate_config(cfg, d);
  const auto report = validate_dataset(d);
  if (!report.ok()) throw ConfigError("invalid dataset: " + report.summary());
  auto [gm, gp] = mean_direction(cfg.direction, d, o);
  Instance in{d, cfg, o, std::move(gm), std::move(gp), cfg.w_minus, cfg.w_plus};
  if (in.w_minus.size() == 0) in.w_minus = Eigen::VectorXd::Ones(d.num_inputs());
  if (in.w_plus.size() == 0) in.w_plus = Eigen::VectorXd::Ones(d.num_outputs());
  return in;
}

void add_rts_rows(LinearProgram& p, const ReturnsToScale& rts, int first, int n, int nvars) {
  Eigen::VectorXd e = Eigen::VectorXd::Zero(nvars);
  e.segment(first, n).setOnes();
  switch (rts.kind) {
    case RtsKind::CRS: break;
    case RtsKind::VRS: p.add_row(e, Relation::Equal, 1.0); break;
    case RtsKind::NIRS: p.add_row(e, Relation::LessEqual, 1.0); break;
    case RtsKind::NDRS: p.add_row(e, Relation::GreaterEqual, 1.0); break;
    case RtsKind::GRS:
      p.add_row(e, Relation::GreaterEqual, rts.lower);
      p.add_row(e, Relation::LessEqual, rts.upper);
      break;
  }
}

std::vector<std::string> stage1_names(const std::string& score, int n) {
  std::vector<std::string> v{score};
  for (int j = 1; j <= n; ++j) v.push_back("l" + std::to_string(j));
  return v;
}

std::vector<std::string> stage2_names(int n, int m, int s) {
  std::vector<std::string> v;
  for (int j = 1; j <= n; ++j) v.push_back("l" + std::to_string(j));
  for (int i = 1; i <= m; ++i) v.push_back("s-" + std::to_string(i));
  for (int r = 1; r <= s; ++r) v.push_back("s+" + std::to_string(r));
  return v;
}

StageInfo stage_info(const SolveOutcome& r) {
  return {r.status, r.iterations, r.primal_residual, r.dual_residual, r.wall_seconds};
}

void require_optimal(const SolveOutcome& r, const std::string& stage, const std::string& what) {
  if (r.optimal()) return;
  throw ModelError(stage, what + " ended " + to_string(r.status));
}

void finish_result(EvaluationResult& res, const Instance& in, bool noisy) {
  const auto& d = in.d;
  const int m = d.num_inputs();
  const int s = d.num_outputs();
  const double q = noisy ? std::abs(probit(in.cfg.alpha)) : 0.0;
  const double beta = res.beta_star;
  const Eigen::VectorXd& lam = res.lambda_star;

  res.s_minus_star.resize(m);
  res.s_plus_star.resize(s);
  for (int i = 0; i < m; ++i) {
    double left = d.inputs(i, in.o) - beta * in.g_minus[i] - d.inputs.row(i).dot(lam);
    if (q > 0.0) left -= q * sigma_minus(i, beta, lam, in.cfg, d, in.o);
    res.s_minus_star[i] = std::max(0.0, left);
  }
  for (int r = 0; r < s; ++r) {
    double left = d.outputs.row(r).dot(lam) - d.outputs(r, in.o) - beta * in.g_plus[r];
    if (q > 0.0) left -= q * sigma_plus(r, beta, lam, in.cfg, d, in.o);
    res.s_plus_star[r] = std::max(0.0, left);
  }
  res.slack_objective = in.w_minus.dot(res.s_minus_star) + in.w_plus.dot(res.s_plus_star);
  res.projected_inputs = d.inputs.col(in.o) - beta * in.g_minus - res.s_minus_star;
  res.projected_outputs = d.outputs.col(in.o) + beta * in.g_plus + res.s_plus_star;
  res.status = classify(beta, res.slack_objective, in.cfg.tol_eff);
}

SecondOrderCone cone_from_row(const LinearRow& row, const RowNoise& noise, int o,
                              int lambda_first, int n, int t_col, double k0, double k1,
                              std::string label) {
  const int nvars = static_cast<int>(row.coeffs.size());
  const Eigen::MatrixXd ft = noise.quantile * noise.factor.transpose();  // rank x n
  SecondOrderCone c;
  c.A = Eigen::MatrixXd::Zero(ft.rows(), nvars);
  c.A.middleCols(lambda_first, n) = ft;
  if (t_col >= 0) c.A.col(t_col) = -k1 * ft.col(o);
  c.b = -k0 * ft.col(o);
  if (row.relation == Relation::LessEqual) {
    c.c = -row.coeffs;
    c.e = row.rhs;
  } else {
    c.c = row.coeffs;
    c.e = -row.rhs;
  }
  c.label = std::move(label);
  return c;
}

}  // namespace sdea::detail
