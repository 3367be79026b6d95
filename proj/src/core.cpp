#include "sdea/core.hpp"

#include "sdea/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace sdea {

// ---------------------------------------------------------------------------
// Validation

std::string ValidationReport::summary() const {
  std::ostringstream os;
  for (std::size_t k = 0; k < issues.size(); ++k) {
    if (k) os << "; ";
    os << issues[k].message;
  }
  return os.str();
}

namespace {

const char* side_name(VariableSide s) { return s == VariableSide::Input ? "input" : "output"; }

void check_means(const Eigen::MatrixXd& means, VariableSide side, ValidationReport& report) {
  for (Eigen::Index v = 0; v < means.rows(); ++v) {
    for (Eigen::Index j = 0; j < means.cols(); ++j) {
      const double x = means(v, j);
      std::ostringstream os;
      if (!std::isfinite(x)) {
        os << "non-finite mean " << side_name(side) << " (" << v + 1 << "," << j + 1 << ")";
        report.issues.push_back(
            {IssueKind::NonFinite, side, static_cast<int>(v), static_cast<int>(j), os.str()});
      } else if (x <= 0.0) {
        os << "non-positive mean " << side_name(side) << " (" << v + 1 << "," << j + 1 << ")";
        report.issues.push_back({IssueKind::NonPositiveMean, side, static_cast<int>(v),
                                 static_cast<int>(j), os.str()});
      }
    }
  }
}

void check_covariances(const std::vector<Eigen::MatrixXd>& covs, Eigen::Index expected_count,
                       Eigen::Index n, VariableSide side, ValidationReport& report) {
  if (static_cast<Eigen::Index>(covs.size()) != expected_count) {
    std::ostringstream os;
    os << "expected " << expected_count << " " << side_name(side) << " covariance matrices, got "
       << covs.size();
    report.issues.push_back({IssueKind::DimensionMismatch, side, -1, -1, os.str()});
    return;
  }
  for (std::size_t v = 0; v < covs.size(); ++v) {
    const auto& c = covs[v];
    const int var = static_cast<int>(v);
    if (c.rows() != n || c.cols() != n) {
      std::ostringstream os;
      os << "covariance of " << side_name(side) << " " << v + 1 << " is " << c.rows() << "x"
         << c.cols() << ", expected " << n << "x" << n;
      report.issues.push_back({IssueKind::DimensionMismatch, side, var, -1, os.str()});
      continue;
    }
    if (!c.allFinite()) {
      std::ostringstream os;
      os << "non-finite covariance (" << side_name(side) << " " << v + 1 << ")";
      report.issues.push_back({IssueKind::NonFinite, side, var, -1, os.str()});
      continue;
    }
    const double scale = std::max(1.0, c.cwiseAbs().maxCoeff());
    if ((c - c.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
      std::ostringstream os;
      os << "covariance not symmetric (" << side_name(side) << " " << v + 1 << ")";
      report.issues.push_back({IssueKind::AsymmetricCovariance, side, var, -1, os.str()});
      continue;
    }
    if (!pivoted_cholesky(c).psd) {
      std::ostringstream os;
      os << "covariance not PSD (" << side_name(side) << " " << v + 1 << ")";
      report.issues.push_back({IssueKind::NotPsdCovariance, side, var, -1, os.str()});
    }
  }
}

}  // namespace

ValidationReport validate_dataset(const Dataset& d) {
  ValidationReport report;
  const Eigen::Index n = d.inputs.cols();
  if (d.outputs.cols() != n) {
    std::ostringstream os;
    os << "input matrix has " << n << " DMUs but output matrix has " << d.outputs.cols();
    report.issues.push_back(
        {IssueKind::DimensionMismatch, VariableSide::Output, -1, -1, os.str()});
    return report;
  }
  check_means(d.inputs, VariableSide::Input, report);
  check_means(d.outputs, VariableSide::Output, report);
  check_covariances(d.input_cov, d.inputs.rows(), n, VariableSide::Input, report);
  check_covariances(d.output_cov, d.outputs.rows(), n, VariableSide::Output, report);
  return report;
}

// ---------------------------------------------------------------------------
// Pivoted Cholesky

CovarianceFactor pivoted_cholesky(const Eigen::MatrixXd& sigma, double tol) {
  const Eigen::Index n = sigma.rows();
  CovarianceFactor out;
  if (n == 0) {
    out.factor.resize(0, 0);
    return out;
  }
  Eigen::MatrixXd a = sigma;  // Schur complement, updated in place
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
  std::vector<bool> used(n, false);
  const double threshold = tol * std::max(1.0, sigma.diagonal().cwiseAbs().maxCoeff());

  Eigen::Index rank = 0;
  for (; rank < n; ++rank) {
    Eigen::Index piv = -1;
    double best = -std::numeric_limits<double>::infinity();
    for (Eigen::Index k = 0; k < n; ++k)
      if (!used[k] && a(k, k) > best) {
        best = a(k, k);
        piv = k;
      }
    if (best <= threshold) break;
    used[piv] = true;
    const double root = std::sqrt(best);
    l(piv, rank) = root;
    for (Eigen::Index k = 0; k < n; ++k)
      if (!used[k]) l(k, rank) = a(k, piv) / root;
    for (Eigen::Index k = 0; k < n; ++k) {
      if (used[k]) continue;
      for (Eigen::Index q = 0; q < n; ++q)
        if (!used[q]) a(k, q) -= l(k, rank) * l(q, rank);
    }
  }

  // Leftover block must vanish for a PSD matrix: |a_kq| <= sqrt(a_kk a_qq).
  double worst_diag = 0.0;
  double worst_any = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    if (used[k]) continue;
    worst_diag = std::min(worst_diag, a(k, k));
    for (Eigen::Index q = 0; q < n; ++q)
      if (!used[q]) worst_any = std::max(worst_any, std::abs(a(k, q)));
  }
  out.psd = worst_diag >= -threshold && worst_any <= 2.0 * threshold;
  out.min_pivot = worst_diag;
  out.factor = l.leftCols(rank);
  return out;
}

DatasetFactors factor_covariances(const Dataset& d) {
  DatasetFactors f;
  for (int i = 0; i < d.num_inputs(); ++i) {
    auto c = pivoted_cholesky(d.input_cov.at(i));
    if (!c.psd) throw ConfigError("covariance not PSD (input " + std::to_string(i + 1) + ")");
    f.inputs.push_back(std::move(c.factor));
  }
  for (int r = 0; r < d.num_outputs(); ++r) {
    auto c = pivoted_cholesky(d.output_cov.at(r));
    if (!c.psd) throw ConfigError("covariance not PSD (output " + std::to_string(r + 1) + ")");
    f.outputs.push_back(std::move(c.factor));
  }
  return f;
}

// ---------------------------------------------------------------------------
// Constraint standard deviations

double input_kappa(const DirectionSpec& dir, int i, double beta) {
  if (const auto* s = std::get_if<StochasticDiagonal>(&dir)) return 1.0 - beta * s->d_minus[i];
  return 1.0;
}

double output_kappa(const DirectionSpec& dir, int r, double beta) {
  if (const auto* s = std::get_if<StochasticDiagonal>(&dir)) return 1.0 + beta * s->d_plus[r];
  return 1.0;
}

namespace {

double sigma_of(const Eigen::MatrixXd& cov, double kappa, const Eigen::VectorXd& lambda, int o) {
  const auto f = pivoted_cholesky(cov);
  if (!f.psd) throw std::invalid_argument("covariance matrix is not PSD");
  if (f.rank() == 0) return 0.0;
  Eigen::VectorXd v = lambda;
  v[o] -= kappa;
  return (f.factor.transpose() * v).norm();
}

void check_point(const Eigen::VectorXd& lambda, const Dataset& d, int o) {
  if (lambda.size() != d.num_dmus())
    throw std::out_of_range("lambda has " + std::to_string(lambda.size()) + " entries, expected " +
                            std::to_string(d.num_dmus()));
  if (o < 0 || o >= d.num_dmus()) throw std::out_of_range("DMU index out of range");
}

}  // namespace

double sigma_minus(int i, double beta, const Eigen::VectorXd& lambda, const ModelConfig& cfg,
                   const Dataset& d, int o) {
  if (i < 0 || i >= d.num_inputs()) throw std::out_of_range("input index out of range");
  check_point(lambda, d, o);
  return sigma_of(d.input_cov[i], input_kappa(cfg.direction, i, beta), lambda, o);
}

double sigma_plus(int r, double beta, const Eigen::VectorXd& lambda, const ModelConfig& cfg,
                  const Dataset& d, int o) {
  if (r < 0 || r >= d.num_outputs()) throw std::out_of_range("output index out of range");
  check_point(lambda, d, o);
  return sigma_of(d.output_cov[r], output_kappa(cfg.direction, r, beta), lambda, o);
}

// ---------------------------------------------------------------------------
// Association

std::pair<Eigen::VectorXd, Eigen::VectorXd> mean_direction(const DirectionSpec& dir,
                                                           const Dataset& d, int o) {
  if (const auto* s = std::get_if<StochasticDiagonal>(&dir))
    return {s->d_minus.cwiseProduct(d.inputs.col(o)), s->d_plus.cwiseProduct(d.outputs.col(o))};
  const auto& g = std::get<DeterministicVector>(dir);
  return {g.g_minus, g.g_plus};
}

ModelConfig associate(const ModelConfig& cfg, const Dataset& d, int o) {
  if (o < 0 || o >= d.num_dmus()) throw std::out_of_range("DMU index out of range");
  ModelConfig out = cfg;
  if (const auto* s = std::get_if<StochasticDiagonal>(&cfg.direction)) {
    out.direction = DeterministicVector{s->d_minus.cwiseProduct(d.inputs.col(o)),
                                       s->d_plus.cwiseProduct(d.outputs.col(o))};
  } else {
    const auto& g = std::get<DeterministicVector>(cfg.direction);
    out.direction = StochasticDiagonal{g.g_minus.cwiseQuotient(d.inputs.col(o)),
                                       g.g_plus.cwiseQuotient(d.outputs.col(o))};
  }
  return out;
}

// ---------------------------------------------------------------------------
// Normal quantile: Wichura (1988), AS241 PPND16.

double probit(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("probit: p must lie in (0, 1)");
  const double q = p - 0.5;
  if (std::abs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    const double num =
        (((((((2.5090809287301226727e+3 * r + 3.3430575583588128105e+4) * r +
              6.7265770927008700853e+4) * r + 4.5921953931549871457e+4) * r +
            1.3731693765509461125e+4) * r + 1.9715909503065514427e+3) * r +
          1.3314166789178437745e+2) * r + 3.3871328727963666080e+0);
    const double den =
        (((((((5.2264952788528545610e+3 * r + 2.8729085735721942674e+4) * r +
              3.9307895800092710610e+4) * r + 2.1213794301586595867e+4) * r +
            5.3941960214247511077e+3) * r + 6.8718700749205790830e+2) * r +
          4.2313330701600911252e+1) * r + 1.0);
    return q * num / den;
  }
  double r = std::sqrt(-std::log(q < 0.0 ? p : 1.0 - p));
  double val = 0.0;
  if (r <= 5.0) {
    r -= 1.6;
    const double num =
        (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
              2.41780725177450611770e-1) * r + 1.27045825245236838258e+0) * r +
            3.64784832476320460504e+0) * r + 5.76949722146069140550e+0) * r +
          4.63033784615654529590e+0) * r + 1.42343711074968357734e+0);
    const double den =
        (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
              1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
            6.89767334985100004550e-1) * r + 1.67638483018380384940e+0) * r +
          2.05319162663775882187e+0) * r + 1.0);
    val = num / den;
  } else {
    r -= 5.0;
    const double num =
        (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
              1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
            2.96560571828504891230e-1) * r + 1.78482653991729133580e+0) * r +
          5.46378491116411436990e+0) * r + 6.65790464350110377720e+0);
    const double den =
        (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
              1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
            1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
          5.99832206555887937690e-1) * r + 1.0);
    val = num / den;
  }
  return q < 0.0 ? -val : val;
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

}  // namespace sdea
