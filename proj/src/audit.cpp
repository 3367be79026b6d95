#include "sdea/audit.hpp"

#include "sdea/core.hpp"
#include "sdea/errors.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace sdea {

namespace {

class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed) : rng_(seed) {}

  double operator()() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(t);
    has_spare_ = true;
    return r * std::cos(t);
  }

 private:
  double uniform() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

  std::mt19937_64 rng_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

Eigen::MatrixXd draw(const Eigen::VectorXd& mean, const Eigen::MatrixXd& factor, long count,
                     NormalStream& normal) {
  const long k = factor.cols();
  Eigen::MatrixXd z(count, k);
  for (long t = 0; t < count; ++t)
    for (long j = 0; j < k; ++j) z(t, j) = normal();
  Eigen::MatrixXd out = mean.transpose().replicate(count, 1);
  if (k > 0) out.noalias() += z * factor.transpose();
  return out;
}

}  // namespace

ScenarioBatch sample_scenarios(const Dataset& d, long count, std::uint64_t seed) {
  if (count < 1) throw ConfigError("scenario count must be >= 1");
  const auto report = validate_dataset(d);
  if (!report.ok()) throw ConfigError("invalid dataset: " + report.summary());
  const auto f = factor_covariances(d);
  ScenarioBatch b;
  b.count = count;
  b.seed = seed;
  b.input_factors = f.inputs;
  b.output_factors = f.outputs;
  NormalStream normal(seed);
  for (int i = 0; i < d.num_inputs(); ++i)
    b.inputs.push_back(draw(d.inputs.row(i).transpose(), f.inputs[i], count, normal));
  for (int r = 0; r < d.num_outputs(); ++r)
    b.outputs.push_back(draw(d.outputs.row(r).transpose(), f.outputs[r], count, normal));
  return b;
}

bool AuditReport::all_pass() const {
  for (const auto& r : rows)
    if (!r.pass) return false;
  return true;
}

AuditReport audit_solution(const EvaluationResult& result, const Dataset& d,
                           const ModelConfig& cfg, int o, const ScenarioBatch& batch) {
  const int n = d.num_dmus(), m = d.num_inputs(), s = d.num_outputs();
  if (o < 0 || o >= n) throw ConfigError("DMU index " + std::to_string(o + 1) + " out of range");
  if (static_cast<int>(batch.inputs.size()) != m || static_cast<int>(batch.outputs.size()) != s)
    throw ConfigError("scenario batch does not match the dataset's variables");
  for (const auto* side : {&batch.inputs, &batch.outputs})
    for (const auto& v : *side)
      if (v.rows() != batch.count || v.cols() != n)
        throw ConfigError("scenario batch does not match the dataset's DMU count");
  if (result.lambda_star.size() != n || result.s_minus_star.size() != m ||
      result.s_plus_star.size() != s)
    throw ConfigError("evaluation result does not match the dataset dimensions");

  const double beta = result.beta_star;
  const auto& lam = result.lambda_star;
  const auto* stoch = std::get_if<StochasticDiagonal>(&cfg.direction);
  const auto* fixed = std::get_if<DeterministicVector>(&cfg.direction);
  const long N = batch.count;

  AuditReport rep;
  rep.dmu = o;
  rep.alpha = cfg.alpha;
  rep.count = N;
  rep.seed = batch.seed;
  Eigen::Array<bool, Eigen::Dynamic, 1> all = Eigen::Array<bool, Eigen::Dynamic, 1>::Ones(N);

  auto record = [&](const std::string& label, const Eigen::VectorXd& value, double scale) {
    const auto ok = (value.array() >= -1e-7 * (1.0 + scale)).eval();
    all = all && ok;
    RowAudit row;
    row.label = label;
    row.p_hat = static_cast<double>(ok.count()) / static_cast<double>(N);
    row.std_error = std::sqrt(row.p_hat * (1.0 - row.p_hat) / static_cast<double>(N));
    row.threshold = 1.0 - cfg.alpha - 3.0 * row.std_error;
    row.pass = row.p_hat >= row.threshold;
    rep.rows.push_back(row);
  };

  for (int i = 0; i < m; ++i) {
    const auto& x = batch.inputs[i];
    // (Theta-(beta) x_o - X lambda - s-)_i, or x_io - beta g-_i - ... when g is fixed
    const double own = stoch ? 1.0 - beta * stoch->d_minus[i] : 1.0;
    const double shift = stoch ? 0.0 : beta * fixed->g_minus[i];
    Eigen::VectorXd v = own * x.col(o) - x * lam;
    v.array() -= shift + result.s_minus_star[i];
    record("in" + std::to_string(i + 1), v, std::abs(d.inputs(i, o)));
  }
  for (int r = 0; r < s; ++r) {
    const auto& y = batch.outputs[r];
    const double own = stoch ? 1.0 + beta * stoch->d_plus[r] : 1.0;
    const double shift = stoch ? 0.0 : beta * fixed->g_plus[r];
    Eigen::VectorXd v = y * lam - own * y.col(o);
    v.array() -= shift + result.s_plus_star[r];
    record("out" + std::to_string(r + 1), v, std::abs(d.outputs(r, o)));
  }
  rep.joint = static_cast<double>(all.count()) / static_cast<double>(N);
  return rep;
}

}  // namespace sdea
