#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace sdea::detail {

struct ConeLayout {
  int orthant = 0;          // leading nonnegative rows
  std::vector<int> socs;    // sizes of the trailing second-order cones
  int rows() const {
    int r = orthant;
    for (int q : socs) r += q;
    return r;
  }
  int degree() const { return orthant + static_cast<int>(socs.size()); }
};

// Cone arithmetic. Every helper walks the orthant block first, then each
// second-order cone in order.

template <class T>
class BasicCones {
 public:
  using VectorXd = Eigen::Matrix<T, Eigen::Dynamic, 1>;
  using MatrixXd = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;

  explicit BasicCones(ConeLayout layout) : layout_(std::move(layout)) {}

  const ConeLayout& layout() const { return layout_; }

  VectorXd identity() const {
    VectorXd e = VectorXd::Zero(layout_.rows());
    e.head(layout_.orthant).setOnes();
    int off = layout_.orthant;
    for (int q : layout_.socs) {
      e[off] = 1.0;
      off += q;
    }
    return e;
  }

  // u o v
  VectorXd product(const VectorXd& u, const VectorXd& v) const {
    VectorXd w(u.size());
    const int l = layout_.orthant;
    w.head(l) = u.head(l).cwiseProduct(v.head(l));
    int off = l;
    for (int q : layout_.socs) {
      const auto us = u.segment(off, q);
      const auto vs = v.segment(off, q);
      w[off] = us.dot(vs);
      w.segment(off + 1, q - 1) = us[0] * vs.tail(q - 1) + vs[0] * us.tail(q - 1);
      off += q;
    }
    return w;
  }

  // x with u o x = v
  VectorXd divide(const VectorXd& u, const VectorXd& v) const {
    VectorXd x(u.size());
    const int l = layout_.orthant;
    x.head(l) = v.head(l).cwiseQuotient(u.head(l));
    int off = l;
    for (int q : layout_.socs) {
      const auto us = u.segment(off, q);
      const auto vs = v.segment(off, q);
      const T det = us[0] * us[0] - us.tail(q - 1).squaredNorm();
      const T x0 = (us[0] * vs[0] - us.tail(q - 1).dot(vs.tail(q - 1))) / det;
      x[off] = x0;
      x.segment(off + 1, q - 1) = (vs.tail(q - 1) - x0 * us.tail(q - 1)) / us[0];
      off += q;
    }
    return x;
  }

  // Smallest alpha with u + alpha e in the cone (negative when interior).
  T shift_needed(const VectorXd& u) const {
    T a = -std::numeric_limits<T>::infinity();
    const int l = layout_.orthant;
    for (int k = 0; k < l; ++k) a = std::max(a, -u[k]);
    int off = l;
    for (int q : layout_.socs) {
      a = std::max(a, u.segment(off + 1, q - 1).norm() - u[off]);
      off += q;
    }
    return a;
  }

  // Largest step in [0, inf) keeping u + alpha d inside the cone.
  T max_step(const VectorXd& u, const VectorXd& d) const {
    T alpha = std::numeric_limits<T>::infinity();
    const int l = layout_.orthant;
    for (int k = 0; k < l; ++k)
      if (d[k] < 0.0) alpha = std::min(alpha, -u[k] / d[k]);
    int off = l;
    for (int q : layout_.socs) {
      const auto us = u.segment(off, q);
      const auto ds = d.segment(off, q);
      const T unorm = std::sqrt(std::max(us[0] * us[0] - us.tail(q - 1).squaredNorm(),
                                              std::numeric_limits<T>::min()));
      const VectorXd ub = us / unorm;
      const VectorXd db = ds / unorm;
      const T rho0 = ub[0] * db[0] - ub.tail(q - 1).dot(db.tail(q - 1));
      const VectorXd rho1 = db.tail(q - 1) - ((rho0 + db[0]) / (ub[0] + 1.0)) * ub.tail(q - 1);
      const T denom = rho1.norm() - rho0;
      if (denom > 0.0) alpha = std::min(alpha, 1.0 / denom);
      off += q;
    }
    return alpha;
  }

  // Nesterov-Todd scaling W (symmetric, block diagonal) with W z = W^-1 s.
  struct Scaling {
    MatrixXd W;
    MatrixXd Winv;
    VectorXd lambda;  // W z
  };

  Scaling nt_scaling(const VectorXd& s, const VectorXd& z) const {
    const int m = layout_.rows();
    Scaling sc{MatrixXd::Zero(m, m), MatrixXd::Zero(m, m), VectorXd(m)};
    const int l = layout_.orthant;
    for (int k = 0; k < l; ++k) {
      const T w = std::sqrt(s[k] / z[k]);
      sc.W(k, k) = w;
      sc.Winv(k, k) = 1.0 / w;
    }
    int off = l;
    for (int q : layout_.socs) {
      const auto ss = s.segment(off, q);
      const auto zs = z.segment(off, q);
      const T snorm = std::sqrt(std::max(ss[0] * ss[0] - ss.tail(q - 1).squaredNorm(),
                                              std::numeric_limits<T>::min()));
      const T znorm = std::sqrt(std::max(zs[0] * zs[0] - zs.tail(q - 1).squaredNorm(),
                                              std::numeric_limits<T>::min()));
      const VectorXd sb = ss / snorm;
      const VectorXd zb = zs / znorm;
      const T gamma = std::sqrt(std::max((1 + sb.dot(zb)) / 2, T(0)));
      VectorXd wb(q);
      wb.tail(q - 1) = (sb.tail(q - 1) - zb.tail(q - 1)) / (2.0 * gamma);
      // keep wb exactly on the unit hyperboloid so J Wbar J stays its inverse
      wb[0] = std::sqrt(1.0 + wb.tail(q - 1).squaredNorm());
      const T eta = std::sqrt(snorm / znorm);

      MatrixXd wbar(q, q);
      wbar(0, 0) = wb[0];
      wbar.block(0, 1, 1, q - 1) = wb.tail(q - 1).transpose();
      wbar.block(1, 0, q - 1, 1) = wb.tail(q - 1);
      wbar.block(1, 1, q - 1, q - 1) =
          MatrixXd::Identity(q - 1, q - 1) +
          wb.tail(q - 1) * wb.tail(q - 1).transpose() / (1.0 + wb[0]);
      // W^-1 = J Wbar J / eta
      MatrixXd winv = wbar;
      winv.block(0, 1, 1, q - 1) *= T(-1);
      winv.block(1, 0, q - 1, 1) *= T(-1);
      sc.W.block(off, off, q, q) = eta * wbar;
      sc.Winv.block(off, off, q, q) = winv / eta;
      off += q;
    }
    sc.lambda = sc.W * z;
    return sc;
  }

 private:
  ConeLayout layout_;
};

using Cones = BasicCones<double>;

}  // namespace sdea::detail
