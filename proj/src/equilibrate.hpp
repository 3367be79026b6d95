#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <vector>

namespace sdea::detail {

// Ruiz equilibration of a stacked constraint matrix M (rows x cols) with
// row groups that must share one scale factor (second-order-cone blocks).
// Afterwards diag(row_scale) * M * diag(col_scale) has rows and columns
// of infinity norm close to one.
struct Scaling {
  Eigen::VectorXd row_scale;
  Eigen::VectorXd col_scale;
};

// `groups[k]` is the group id of row k; rows with equal ids are scaled
// together. Pass an empty vector to scale each row on its own.
inline Scaling ruiz(const Eigen::MatrixXd& m, const std::vector<int>& groups, int passes) {
  const Eigen::Index rows = m.rows();
  const Eigen::Index cols = m.cols();
  Scaling s{Eigen::VectorXd::Ones(rows), Eigen::VectorXd::Ones(cols)};
  if (rows == 0 || cols == 0) return s;
  Eigen::MatrixXd work = m;
  int num_groups = 0;
  for (int g : groups) num_groups = std::max(num_groups, g + 1);

  for (int pass = 0; pass < passes; ++pass) {
    Eigen::VectorXd rn = work.cwiseAbs().rowwise().maxCoeff();
    if (!groups.empty()) {
      Eigen::VectorXd gmax = Eigen::VectorXd::Zero(num_groups);
      for (Eigen::Index k = 0; k < rows; ++k) gmax[groups[k]] = std::max(gmax[groups[k]], rn[k]);
      for (Eigen::Index k = 0; k < rows; ++k) rn[k] = gmax[groups[k]];
    }
    Eigen::VectorXd cn = work.cwiseAbs().colwise().maxCoeff().transpose();
    Eigen::VectorXd rf(rows), cf(cols);
    for (Eigen::Index k = 0; k < rows; ++k) rf[k] = rn[k] > 0.0 ? 1.0 / std::sqrt(rn[k]) : 1.0;
    for (Eigen::Index j = 0; j < cols; ++j) cf[j] = cn[j] > 0.0 ? 1.0 / std::sqrt(cn[j]) : 1.0;
    work = rf.asDiagonal() * work * cf.asDiagonal();
    s.row_scale = s.row_scale.cwiseProduct(rf);
    s.col_scale = s.col_scale.cwiseProduct(cf);
  }
  return s;
}

}  // namespace sdea::detail
