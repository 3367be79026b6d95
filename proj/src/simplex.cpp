#include "equilibrate.hpp"
#include "sdea/program.hpp"

#include <Eigen/LU>

#include <chrono>
#include <cmath>
#include <limits>
#include <vector>

namespace sdea {

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kCostTol = 1e-10;
constexpr int kDegenerateStreak = 50;

enum class PhaseResult { Optimal, Unbounded, PivotLimit };

// Tableau in the form [B^-1 A | B^-1 b] with a trailing reduced-cost row
// [d | -z] for "minimize c'x".
class Tableau {
 public:
  Tableau(Eigen::MatrixXd t, std::vector<int> basis) : t_(std::move(t)), basis_(std::move(basis)) {}

  int rows() const { return static_cast<int>(t_.rows()) - 1; }
  int cols() const { return static_cast<int>(t_.cols()) - 1; }
  const std::vector<int>& basis() const { return basis_; }
  Eigen::MatrixXd& data() { return t_; }

  void pivot(int row, int col) {
    t_.row(row) /= t_(row, col);
    for (Eigen::Index k = 0; k < t_.rows(); ++k) {
      if (k == row) continue;
      const double f = t_(k, col);
      if (f != 0.0) t_.row(k) -= f * t_.row(row);
    }
    basis_[row] = col;
  }

  // `allowed(j)` filters entering columns.
  template <class Allowed>
  PhaseResult run(long& pivots, long max_pivots, Allowed allowed) {
    const int m = rows();
    const int n = cols();
    int degenerate = 0;
    bool bland = false;
    while (true) {
      int enter = -1;
      double best = -kCostTol;
      for (int j = 0; j < n; ++j) {
        if (!allowed(j)) continue;
        const double d = t_(m, j);
        if (bland) {
          if (d < -kCostTol) {
            enter = j;
            break;
          }
        } else if (d < best) {
          best = d;
          enter = j;
        }
      }
      if (enter < 0) return PhaseResult::Optimal;
      if (pivots >= max_pivots) return PhaseResult::PivotLimit;

      int leave = -1;
      double ratio = std::numeric_limits<double>::infinity();
      for (int k = 0; k < m; ++k) {
        const double a = t_(k, enter);
        if (a <= kPivotTol) continue;
        const double r = std::max(t_(k, n), 0.0) / a;
        if (r < ratio - 1e-12 || (std::abs(r - ratio) <= 1e-12 && leave >= 0 &&
                                  basis_[k] < basis_[leave])) {
          ratio = r;
          leave = k;
        }
      }
      if (leave < 0) return PhaseResult::Unbounded;
      degenerate = ratio <= 1e-12 ? degenerate + 1 : 0;
      if (degenerate > kDegenerateStreak) bland = true;
      pivot(leave, enter);
      ++pivots;
    }
  }

 private:
  Eigen::MatrixXd t_;
  std::vector<int> basis_;
};

}  // namespace

SolveOutcome solve_lp(const LinearProgram& p, const SolverOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  check_well_formed(p);
  SolveOutcome out;
  const int nv = p.num_vars();
  const int nr = static_cast<int>(p.rows.size());

  // Row/column equilibration of the constraint matrix.
  Eigen::MatrixXd a(nr, nv);
  Eigen::VectorXd rhs(nr);
  for (int k = 0; k < nr; ++k) {
    a.row(k) = p.rows[k].coeffs.transpose();
    rhs[k] = p.rows[k].rhs;
  }
  detail::Scaling sc{Eigen::VectorXd::Ones(nr), Eigen::VectorXd::Ones(nv)};
  if (opts.equilibrate) sc = detail::ruiz(a, {}, opts.equilibration_passes);
  const Eigen::MatrixXd as = sc.row_scale.asDiagonal() * a * sc.col_scale.asDiagonal();
  const Eigen::VectorXd bs = sc.row_scale.cwiseProduct(rhs);
  Eigen::VectorXd cost = sc.col_scale.cwiseProduct(p.objective);
  if (p.sense == Sense::Maximize) cost = -cost;

  // Standard-form columns: structural (free ones split), slack/surplus,
  // artificial.
  std::vector<int> pos_col(nv), neg_col(nv, -1);
  int ncols = 0;
  for (int j = 0; j < nv; ++j) {
    pos_col[j] = ncols++;
    if (p.bounds[j] == VarBound::Free) neg_col[j] = ncols++;
  }
  std::vector<int> slack_col(nr, -1), art_col(nr, -1);
  std::vector<double> sign(nr, 1.0);
  for (int k = 0; k < nr; ++k) {
    Relation r = p.rows[k].relation;
    if (bs[k] < 0.0) {
      sign[k] = -1.0;
      if (r == Relation::LessEqual) r = Relation::GreaterEqual;
      else if (r == Relation::GreaterEqual) r = Relation::LessEqual;
    }
    if (r != Relation::Equal) slack_col[k] = ncols++;
    if (r != Relation::LessEqual) art_col[k] = -2;  // placeholder
  }
  const int first_art = ncols;
  for (int k = 0; k < nr; ++k)
    if (art_col[k] == -2) art_col[k] = ncols++;

  Eigen::MatrixXd std_a = Eigen::MatrixXd::Zero(nr, ncols);
  Eigen::VectorXd std_b(nr);
  Eigen::VectorXd std_c = Eigen::VectorXd::Zero(ncols);
  for (int j = 0; j < nv; ++j) {
    std_c[pos_col[j]] = cost[j];
    if (neg_col[j] >= 0) std_c[neg_col[j]] = -cost[j];
  }
  std::vector<int> basis(nr);
  for (int k = 0; k < nr; ++k) {
    for (int j = 0; j < nv; ++j) {
      std_a(k, pos_col[j]) = sign[k] * as(k, j);
      if (neg_col[j] >= 0) std_a(k, neg_col[j]) = -sign[k] * as(k, j);
    }
    std_b[k] = sign[k] * bs[k];
    Relation r = p.rows[k].relation;
    if (sign[k] < 0 && r != Relation::Equal)
      r = r == Relation::LessEqual ? Relation::GreaterEqual : Relation::LessEqual;
    if (r == Relation::LessEqual) {
      std_a(k, slack_col[k]) = 1.0;
      basis[k] = slack_col[k];
    } else {
      if (r == Relation::GreaterEqual) std_a(k, slack_col[k]) = -1.0;
      std_a(k, art_col[k]) = 1.0;
      basis[k] = art_col[k];
    }
  }

  // Phase 1: minimize the sum of artificials.
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(nr + 1, ncols + 1);
  t.topLeftCorner(nr, ncols) = std_a;
  t.topRightCorner(nr, 1) = std_b;
  for (int k = 0; k < nr; ++k) {
    if (basis[k] < first_art) continue;
    t.row(nr) -= t.row(k);
  }
  for (int j = first_art; j < ncols; ++j) t(nr, j) += 1.0;
  Tableau tab(std::move(t), basis);
  long pivots = 0;
  auto finish = [&](SolveStatus s) {
    out.status = s;
    out.iterations = static_cast<int>(pivots);
    out.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
  };

  if (first_art < ncols) {
    const auto r1 = tab.run(pivots, opts.max_pivots, [](int) { return true; });
    if (r1 == PhaseResult::PivotLimit) return finish(SolveStatus::IterationLimit);
    const double infeas = -tab.data()(nr, ncols);
    if (infeas > opts.feas_tol * std::max(1.0, std_b.cwiseAbs().maxCoeff()))
      return finish(SolveStatus::Infeasible);
    // Drive zero-level artificials out of the basis where possible.
    for (int k = 0; k < nr; ++k) {
      if (tab.basis()[k] < first_art) continue;
      for (int j = 0; j < first_art; ++j)
        if (std::abs(tab.data()(k, j)) > kPivotTol) {
          tab.pivot(k, j);
          break;
        }
    }
  }

  // Phase 2 reduced costs from the current basis.
  {
    auto& td = tab.data();
    td.row(nr).setZero();
    td.row(nr).head(ncols) = std_c.transpose();
    for (int k = 0; k < nr; ++k) {
      const int bj = tab.basis()[k];
      const double cb = bj < ncols ? std_c[bj] : 0.0;
      if (cb != 0.0) td.row(nr) -= cb * td.row(k);
    }
  }
  const auto r2 = tab.run(pivots, opts.max_pivots, [&](int j) { return j < first_art; });
  if (r2 == PhaseResult::PivotLimit) return finish(SolveStatus::IterationLimit);
  if (r2 == PhaseResult::Unbounded) return finish(SolveStatus::Unbounded);

  // Recompute the basic solution from the original data for accuracy.
  Eigen::VectorXd xs = Eigen::VectorXd::Zero(ncols);
  {
    std::vector<int> rows_used, cols_used;
    for (int k = 0; k < nr; ++k)
      if (tab.basis()[k] < first_art) {
        rows_used.push_back(k);
        cols_used.push_back(tab.basis()[k]);
      }
    for (int k = 0; k < nr; ++k) xs[tab.basis()[k]] = std::max(0.0, tab.data()(k, ncols));
    if (static_cast<int>(rows_used.size()) == nr && nr > 0) {
      Eigen::MatrixXd bmat(nr, nr);
      for (int k = 0; k < nr; ++k) bmat.col(k) = std_a.col(cols_used[k]);
      Eigen::PartialPivLU<Eigen::MatrixXd> lu(bmat);
      Eigen::VectorXd xb = lu.solve(std_b);
      const double tol = 1e-9 * (1.0 + std_b.cwiseAbs().maxCoeff());
      if (xb.allFinite() && (bmat * xb - std_b).cwiseAbs().maxCoeff() < tol)
        for (int k = 0; k < nr; ++k) xs[cols_used[k]] = std::max(0.0, xb[k]);
    }
  }

  Eigen::VectorXd z(nv);
  for (int j = 0; j < nv; ++j) {
    double v = xs[pos_col[j]];
    if (neg_col[j] >= 0) v -= xs[neg_col[j]];
    z[j] = v * sc.col_scale[j];
  }
  out.x = z;
  out.objective = p.objective.dot(z);
  double viol = 0.0;
  for (int k = 0; k < nr; ++k) {
    const double lhs = p.rows[k].coeffs.dot(z);
    const double scale = 1.0 + std::abs(p.rows[k].rhs);
    double v = 0.0;
    switch (p.rows[k].relation) {
      case Relation::LessEqual: v = std::max(0.0, lhs - p.rows[k].rhs); break;
      case Relation::GreaterEqual: v = std::max(0.0, p.rows[k].rhs - lhs); break;
      case Relation::Equal: v = std::abs(lhs - p.rows[k].rhs); break;
    }
    viol = std::max(viol, v / scale);
  }
  for (int j = 0; j < nv; ++j)
    if (p.bounds[j] == VarBound::NonNegative) viol = std::max(viol, -z[j]);
  out.primal_residual = viol;
  if (viol > std::max(opts.feas_tol, 1e-9)) return finish(SolveStatus::NumericalFailure);
  return finish(SolveStatus::Optimal);
}

}  // namespace sdea
