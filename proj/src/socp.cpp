#include "cones.hpp"
#include "equilibrate.hpp"
#include "sdea/program.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <vector>

// Conic form used internally (CVXOPT/ECOS convention):
//   minimize c'x  s.t.  A x = b,  G x + s = h,  s in K
// with K a product of one nonnegative orthant block and second-order
// cones. Solved through the homogeneous self-dual embedding.

namespace sdea {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;
using detail::ConeLayout;
using Real = long double;
using Vec = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
using Mat = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
using Cones = detail::BasicCones<Real>;

struct StandardForm {
  MatrixXd A;
  VectorXd b;
  MatrixXd G;
  VectorXd h;
  VectorXd c;
  ConeLayout cones;
};

StandardForm to_standard_form(const ConicProgram& p) {
  const auto& lp = p.linear;
  const int n = lp.num_vars();
  std::vector<VectorXd> eq_rows, ineq_rows;
  std::vector<double> eq_rhs, ineq_rhs;

  for (const auto& r : lp.rows) {
    switch (r.relation) {
      case Relation::Equal:
        eq_rows.push_back(r.coeffs);
        eq_rhs.push_back(r.rhs);
        break;
      case Relation::LessEqual:
        ineq_rows.push_back(r.coeffs);
        ineq_rhs.push_back(r.rhs);
        break;
      case Relation::GreaterEqual:
        ineq_rows.push_back(-r.coeffs);
        ineq_rhs.push_back(-r.rhs);
        break;
    }
  }
  for (int j = 0; j < n; ++j) {
    if (lp.bounds[j] != VarBound::NonNegative) continue;
    VectorXd row = VectorXd::Zero(n);
    row[j] = -1.0;
    ineq_rows.push_back(row);
    ineq_rhs.push_back(0.0);
  }
  // Cones without a norm part are plain inequalities c'z + e >= 0.
  std::vector<const SecondOrderCone*> socs;
  for (const auto& c : p.cones) {
    if (c.A.rows() == 0) {
      ineq_rows.push_back(-c.c);
      ineq_rhs.push_back(c.e);
    } else {
      socs.push_back(&c);
    }
  }

  StandardForm f;
  f.cones.orthant = static_cast<int>(ineq_rows.size());
  for (const auto* c : socs) f.cones.socs.push_back(static_cast<int>(c->A.rows()) + 1);
  const int m = f.cones.rows();
  f.A.resize(static_cast<Eigen::Index>(eq_rows.size()), n);
  f.b.resize(static_cast<Eigen::Index>(eq_rows.size()));
  for (std::size_t k = 0; k < eq_rows.size(); ++k) {
    f.A.row(k) = eq_rows[k].transpose();
    f.b[k] = eq_rhs[k];
  }
  f.G.resize(m, n);
  f.h.resize(m);
  int row = 0;
  for (std::size_t k = 0; k < ineq_rows.size(); ++k, ++row) {
    f.G.row(row) = ineq_rows[k].transpose();
    f.h[row] = ineq_rhs[k];
  }
  for (const auto* c : socs) {
    // s = (c'z + e, A z + b) = h - G z
    f.G.row(row) = -c->c.transpose();
    f.h[row] = c->e;
    ++row;
    f.G.block(row, 0, c->A.rows(), n) = -c->A;
    f.h.segment(row, c->A.rows()) = c->b;
    row += static_cast<int>(c->A.rows());
  }
  f.c = lp.sense == Sense::Maximize ? VectorXd(-lp.objective) : lp.objective;
  return f;
}

// ---------------------------------------------------------------------------

// Newton system [0 A' G'; A 0 0; G 0 -W^2]. Factored in the unknowns
// (dx, dy, W dz), which turns the last block into -I; refinement runs on
// the unscaled system.
class KktSolver {
 public:
  KktSolver(const Mat& A, const Mat& G, const Mat& W, const Mat& Winv,
            Real reg)
      : n_(static_cast<int>(G.cols())), p_(static_cast<int>(A.rows())),
        m_(static_cast<int>(G.rows())), winv_(Winv) {
    const int dim = n_ + p_ + m_;
    k_ = Mat::Zero(dim, dim);
    k_.block(0, n_, n_, p_) = A.transpose();
    k_.block(0, n_ + p_, n_, m_) = G.transpose();
    k_.block(n_, 0, p_, n_) = A;
    k_.block(n_ + p_, 0, m_, n_) = G;
    k_.block(n_ + p_, n_ + p_, m_, m_) = -W * W;

    const Mat gs = Winv * G;
    Mat ks = Mat::Zero(dim, dim);
    ks.block(0, n_, n_, p_) = A.transpose();
    ks.block(0, n_ + p_, n_, m_) = gs.transpose();
    ks.block(n_, 0, p_, n_) = A;
    ks.block(n_ + p_, 0, m_, n_) = gs;
    ks.block(n_ + p_, n_ + p_, m_, m_) = -Mat::Identity(m_, m_);
    ks.diagonal().head(n_).array() += reg;
    ks.diagonal().segment(n_, p_).array() -= reg;
    lu_.compute(ks);
  }

  Vec solve(const Vec& rhs) const {
    Vec x = apply(rhs);
    Real best = (rhs - k_ * x).lpNorm<Eigen::Infinity>();
    for (int it = 0; it < 8; ++it) {
      const Vec r = rhs - k_ * x;
      const Real norm = r.lpNorm<Eigen::Infinity>();
      if (norm <= 1e-15 * (1.0 + rhs.lpNorm<Eigen::Infinity>())) break;
      const Vec next = x + apply(r);
      const Real nn = (rhs - k_ * next).lpNorm<Eigen::Infinity>();
      if (!(nn < best)) break;
      best = nn;
      x = next;
    }
    return x;
  }

 private:
  Vec apply(const Vec& rhs) const {
    Vec b = rhs;
    b.tail(m_) = winv_ * rhs.tail(m_);
    Vec x = lu_.solve(b);
    x.tail(m_) = winv_ * x.tail(m_);
    return x;
  }

  int n_, p_, m_;
  Mat winv_;
  Mat k_;
  Eigen::PartialPivLU<Mat> lu_;
};

}  // namespace

SolveOutcome solve_socp(const ConicProgram& prog, const SolverOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  check_well_formed(prog);
  StandardForm f = to_standard_form(prog);
  const int n = static_cast<int>(f.c.size());
  const int p = static_cast<int>(f.A.rows());
  const int m = static_cast<int>(f.G.rows());
  const Cones cones(f.cones);

  // Equilibration: shared factor within each cone block.
  VectorXd col_scale = VectorXd::Ones(n);
  VectorXd eq_scale = VectorXd::Ones(p);
  VectorXd ineq_scale = VectorXd::Ones(m);
  if (opts.equilibrate && n > 0 && p + m > 0) {
    MatrixXd stacked(p + m, n);
    stacked << f.A, f.G;
    std::vector<int> groups(p + m);
    int g = 0;
    for (int k = 0; k < p + f.cones.orthant; ++k) groups[k] = g++;
    int row = p + f.cones.orthant;
    for (int q : f.cones.socs) {
      for (int k = 0; k < q; ++k) groups[row + k] = g;
      ++g;
      row += q;
    }
    const auto sc = detail::ruiz(stacked, groups, opts.equilibration_passes);
    col_scale = sc.col_scale;
    eq_scale = sc.row_scale.head(p);
    ineq_scale = sc.row_scale.tail(m);
  }
  const Mat A = (eq_scale.asDiagonal() * f.A * col_scale.asDiagonal()).cast<Real>();
  const Vec b = eq_scale.cwiseProduct(f.b).cast<Real>();
  const Mat G = (ineq_scale.asDiagonal() * f.G * col_scale.asDiagonal()).cast<Real>();
  const Vec h = ineq_scale.cwiseProduct(f.h).cast<Real>();
  const Vec c = col_scale.cwiseProduct(f.c).cast<Real>();

  const Real resx0 = std::max<Real>(1.0, c.norm());
  const Real resy0 = std::max<Real>(1.0, b.norm());
  const Real resz0 = std::max<Real>(1.0, h.norm());
  const Real reg = 1e-11;

  SolveOutcome out;
  auto finish = [&](SolveStatus status, const Vec& xs, Real tau) {
    out.status = status;
    const VectorXd x = (xs / (tau > 0 ? tau : Real(1))).cast<double>().cwiseProduct(col_scale);
    out.x = x;
    out.objective = prog.linear.objective.dot(x);
    out.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
  };

  // Initial point from two least-squares style KKT solves with W = I.
  Vec x, y, z, s;
  {
    const KktSolver kkt(A, G, Mat::Identity(m, m), Mat::Identity(m, m), reg);
    Vec rhs(n + p + m);
    rhs << Vec::Zero(n), b, h;
    Vec sol = kkt.solve(rhs);
    x = sol.head(n);
    s = -sol.tail(m);
    const Real ap = cones.shift_needed(s);
    if (ap >= 0.0) s += (1.0 + ap) * cones.identity();

    rhs << -c, Vec::Zero(p), Vec::Zero(m);
    sol = kkt.solve(rhs);
    y = sol.segment(n, p);
    z = sol.tail(m);
    const Real ad = cones.shift_needed(z);
    if (ad >= 0.0) z += (1.0 + ad) * cones.identity();
  }
  Real tau = 1.0;
  Real kappa = 1.0;
  const int nu = f.cones.degree();
  const Vec e = cones.identity();

  for (int iter = 0;; ++iter) {
    out.iterations = iter;
    const Vec rx = A.transpose() * y + G.transpose() * z + c * tau;
    const Vec ry = A * x - b * tau;
    const Vec rz = s + G * x - h * tau;
    const Real cx = c.dot(x);
    const Real by_hz = b.dot(y) + h.dot(z);
    const Real rt = kappa + cx + by_hz;
    const Real mu = (s.dot(z) + tau * kappa) / (nu + 1);

    const Real pres = std::max(ry.norm() / resy0, rz.norm() / resz0) / tau;
    const Real dres = rx.norm() / resx0 / tau;
    const Real pcost = cx / tau;
    const Real dcost = -by_hz / tau;
    const Real gap = s.dot(z) / (tau * tau);
    const Real scale = std::min(std::abs(pcost), std::abs(dcost));
    const Real relgap = gap / std::max<Real>(scale, 1e-300);
    const Real objgap = std::abs(pcost - dcost);
    out.primal_residual = pres;
    out.dual_residual = dres;
    out.gap = gap;

    const Real size = std::max({x.lpNorm<Eigen::Infinity>(), z.lpNorm<Eigen::Infinity>(),
                                  s.lpNorm<Eigen::Infinity>(), tau});
    if (!(size < 1e30) || !std::isfinite(tau))
      return finish(SolveStatus::NumericalFailure, x, tau);
    if (pres <= opts.feas_tol && dres <= opts.feas_tol &&
        (gap <= opts.gap_tol || relgap <= opts.gap_tol ||
         objgap <= opts.gap_tol * std::max<Real>(1.0, scale)))
      return finish(SolveStatus::Optimal, x, tau);
    if (by_hz < 0.0) {
      const Real pinf = (A.transpose() * y + G.transpose() * z).norm() / resx0 / -by_hz;
      if (pinf <= opts.feas_tol) return finish(SolveStatus::Infeasible, x, 0.0);
    }
    if (cx < 0.0) {
      const Real dinf = std::max((A * x).norm() / resy0, (G * x + s).norm() / resz0) / -cx;
      if (dinf <= opts.feas_tol) return finish(SolveStatus::Unbounded, x, 0.0);
    }
    if (iter >= opts.max_iterations) return finish(SolveStatus::IterationLimit, x, tau);

    const auto nt = cones.nt_scaling(s, z);
    const Mat W2 = nt.W * nt.W;
    const KktSolver kkt(A, G, nt.W, nt.Winv, reg);
    const auto& lam = nt.lambda;

    Vec rhs1(n + p + m);
    rhs1 << -c, b, h;
    const Vec sol1 = kkt.solve(rhs1);
    const Vec x1 = sol1.head(n), y1 = sol1.segment(n, p), z1 = sol1.tail(m);
    const Real denom_base = c.dot(x1) + b.dot(y1) + h.dot(z1);

    struct Direction {
      Vec dx, dy, dz, ds;
      Real dtau, dkappa;
    };
    auto direction = [&](Real sigma, const Vec& ds_rhs, Real dk_rhs) {
      Vec rhs(n + p + m);
      rhs << -(1.0 - sigma) * rx, -(1.0 - sigma) * ry,
          -(1.0 - sigma) * rz - nt.W * cones.divide(lam, ds_rhs);
      const Vec sol2 = kkt.solve(rhs);
      const Vec x2 = sol2.head(n), y2 = sol2.segment(n, p), z2 = sol2.tail(m);
      const Real rt_rhs = -(1.0 - sigma) * rt - dk_rhs / tau;
      Direction d;
      d.dtau = (rt_rhs - c.dot(x2) - b.dot(y2) - h.dot(z2)) / (denom_base - kappa / tau);
      d.dx = x2 + d.dtau * x1;
      d.dy = y2 + d.dtau * y1;
      d.dz = z2 + d.dtau * z1;
      d.ds = nt.W * cones.divide(lam, ds_rhs) - W2 * d.dz;
      d.dkappa = (dk_rhs - kappa * d.dtau) / tau;
      return d;
    };
    auto step_to_boundary = [&](const Direction& d) {
      Real a = std::min(cones.max_step(s, d.ds), cones.max_step(z, d.dz));
      if (d.dtau < 0.0) a = std::min(a, -tau / d.dtau);
      if (d.dkappa < 0.0) a = std::min(a, -kappa / d.dkappa);
      return a;
    };

    // Predictor.
    const Direction aff = direction(0.0, -cones.product(lam, lam), -tau * kappa);
    const Real alpha_aff = std::min<Real>(1.0, step_to_boundary(aff));
    const Real sigma = std::clamp<Real>(std::pow(1 - alpha_aff, 3), 0, 1);

    // Corrector.
    const Vec corr = cones.product(nt.Winv * aff.ds, nt.W * aff.dz);
    Direction d = direction(sigma, -cones.product(lam, lam) + sigma * mu * e - corr,
                            -tau * kappa + sigma * mu - aff.dtau * aff.dkappa);
    Real alpha = std::min<Real>(1.0, 0.99 * step_to_boundary(d));
    if (alpha < 0.5 * alpha_aff) {
      // the second-order term can wreck the step near the boundary
      const Real sig = std::max<Real>(sigma, 0.1);
      Direction alt = direction(sig, -cones.product(lam, lam) + sig * mu * e,
                                -tau * kappa + sig * mu);
      const Real a2 = std::min<Real>(1.0, 0.99 * step_to_boundary(alt));
      if (a2 > alpha) {
        d = std::move(alt);
        alpha = a2;
      }
    }
    if (!(alpha > 1e-14)) return finish(SolveStatus::NumericalFailure, x, tau);

    x += alpha * d.dx;
    y += alpha * d.dy;
    z += alpha * d.dz;
    s += alpha * d.ds;
    tau += alpha * d.dtau;
    kappa += alpha * d.dkappa;
  }
}

}  // namespace sdea
