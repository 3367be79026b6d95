#include "sdea/types.hpp"

#include "sdea/errors.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace sdea {

Dataset Dataset::from_means(Eigen::MatrixXd inputs, Eigen::MatrixXd outputs) {
  Dataset d;
  const auto n = inputs.cols();
  d.inputs = std::move(inputs);
  d.outputs = std::move(outputs);
  d.input_cov.assign(d.inputs.rows(), Eigen::MatrixXd::Zero(n, n));
  d.output_cov.assign(d.outputs.rows(), Eigen::MatrixXd::Zero(n, n));
  for (Eigen::Index j = 0; j < n; ++j) d.dmu_names.push_back("DMU" + std::to_string(j + 1));
  for (Eigen::Index i = 0; i < d.inputs.rows(); ++i)
    d.input_names.push_back("x" + std::to_string(i + 1));
  for (Eigen::Index r = 0; r < d.outputs.rows(); ++r)
    d.output_names.push_back("y" + std::to_string(r + 1));
  return d;
}

CovarianceSpec canonical(const CovarianceSpec& spec) {
  if (const auto* s = std::get_if<cov::ScalarIdentity>(&spec); s && s->c == 0.0) return cov::Zero{};
  return spec;
}

Eigen::MatrixXd expand(const CovarianceSpec& spec, int n) {
  struct Visitor {
    int n;
    Eigen::MatrixXd operator()(const cov::Zero&) const { return Eigen::MatrixXd::Zero(n, n); }
    Eigen::MatrixXd operator()(const cov::ScalarIdentity& s) const {
      if (!(s.c >= 0.0)) throw std::invalid_argument("scalar covariance needs c >= 0");
      return Eigen::MatrixXd::Identity(n, n) * (s.c * s.c);
    }
    Eigen::MatrixXd operator()(const cov::Diagonal& s) const {
      if (s.variances.size() != n)
        throw std::invalid_argument("diagonal covariance has " +
                                    std::to_string(s.variances.size()) + " entries, expected " +
                                    std::to_string(n));
      if ((s.variances.array() < 0.0).any())
        throw std::invalid_argument("diagonal covariance has a negative variance");
      return s.variances.asDiagonal();
    }
    Eigen::MatrixXd operator()(const cov::Full& s) const {
      if (s.matrix.rows() != n || s.matrix.cols() != n)
        throw std::invalid_argument("full covariance must be " + std::to_string(n) + "x" +
                                    std::to_string(n));
      return s.matrix;
    }
  };
  return std::visit(Visitor{n}, spec);
}

std::string to_string(const ReturnsToScale& rts) {
  switch (rts.kind) {
    case RtsKind::CRS: return "crs";
    case RtsKind::VRS: return "vrs";
    case RtsKind::NIRS: return "nirs";
    case RtsKind::NDRS: return "ndrs";
    case RtsKind::GRS: {
      std::ostringstream os;
      os << "grs:" << rts.lower << "," << rts.upper;
      return os.str();
    }
  }
  return "?";
}

const char* to_string(Efficiency e) {
  switch (e) {
    case Efficiency::Efficient: return "Efficient";
    case Efficiency::WeaklyEfficient: return "WeaklyEfficient";
    case Efficiency::Inefficient: return "Inefficient";
  }
  return "?";
}

Efficiency classify(double beta_star, double slack_objective, double tol) {
  if (beta_star > tol) return Efficiency::Inefficient;
  return slack_objective <= tol ? Efficiency::Efficient : Efficiency::WeaklyEfficient;
}

namespace {

void check_direction_half(const Eigen::VectorXd& v, int expected, const char* what) {
  if (v.size() != expected)
    throw ConfigError(std::string(what) + " has " + std::to_string(v.size()) +
                      " components, expected " + std::to_string(expected));
  for (Eigen::Index k = 0; k < v.size(); ++k)
    if (!std::isfinite(v[k]) || v[k] < 0.0)
      throw ConfigError(std::string(what) + " component " + std::to_string(k + 1) +
                        " must be a finite nonnegative number");
}

void check_weights(const Eigen::VectorXd& w, const Eigen::VectorXd& dir, int expected,
                   const char* what) {
  if (w.size() == 0) return;
  if (w.size() != expected)
    throw ConfigError(std::string(what) + " has " + std::to_string(w.size()) +
                      " components, expected " + std::to_string(expected));
  for (Eigen::Index k = 0; k < w.size(); ++k) {
    if (!std::isfinite(w[k]) || w[k] < 0.0)
      throw ConfigError(std::string(what) + " component " + std::to_string(k + 1) +
                        " must be a finite nonnegative number");
    if (w[k] == 0.0 && dir[k] != 0.0)
      throw ConfigError(std::string(what) + " component " + std::to_string(k + 1) +
                        " is zero but its direction component is not (zero weights are "
                        "reserved for non-discretionary variables)");
  }
}

}  // namespace

void validate_config(const ModelConfig& cfg, const Dataset& d) {
  const Eigen::VectorXd* minus = nullptr;
  const Eigen::VectorXd* plus = nullptr;
  if (const auto* s = std::get_if<StochasticDiagonal>(&cfg.direction)) {
    check_direction_half(s->d_minus, d.num_inputs(), "d-");
    check_direction_half(s->d_plus, d.num_outputs(), "d+");
    minus = &s->d_minus;
    plus = &s->d_plus;
  } else {
    const auto& g = std::get<DeterministicVector>(cfg.direction);
    check_direction_half(g.g_minus, d.num_inputs(), "g-");
    check_direction_half(g.g_plus, d.num_outputs(), "g+");
    minus = &g.g_minus;
    plus = &g.g_plus;
  }
  if (minus->isZero(0.0) && plus->isZero(0.0))
    throw ConfigError("direction must have at least one nonzero component");
  check_weights(cfg.w_minus, *minus, d.num_inputs(), "w-");
  check_weights(cfg.w_plus, *plus, d.num_outputs(), "w+");
  if (cfg.rts.kind == RtsKind::GRS &&
      !(cfg.rts.lower >= 0.0 && cfg.rts.lower <= 1.0 && cfg.rts.upper >= 1.0))
    throw ConfigError("GRS bounds need 0 <= L <= 1 <= U");
  if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
  if (!(cfg.tol_eff >= 0.0)) throw ConfigError("tol_eff must be nonnegative");
}

ModelConfig stochastic_config(Eigen::VectorXd d_minus, Eigen::VectorXd d_plus, double alpha) {
  ModelConfig cfg;
  cfg.direction = StochasticDiagonal{std::move(d_minus), std::move(d_plus)};
  cfg.alpha = alpha;
  return cfg;
}

ModelConfig deterministic_config(Eigen::VectorXd g_minus, Eigen::VectorXd g_plus, double alpha) {
  ModelConfig cfg;
  cfg.direction = DeterministicVector{std::move(g_minus), std::move(g_plus)};
  cfg.alpha = alpha;
  return cfg;
}

}  // namespace sdea
