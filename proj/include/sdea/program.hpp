#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace sdea {

enum class Sense { Maximize, Minimize };
enum class Relation { LessEqual, Equal, GreaterEqual };
enum class VarBound { NonNegative, Free };

struct LinearRow {
  Eigen::VectorXd coeffs;
  Relation relation = Relation::LessEqual;
  double rhs = 0.0;

  bool operator==(const LinearRow& o) const {
    return relation == o.relation && rhs == o.rhs && coeffs == o.coeffs;
  }
};

// Solver-agnostic linear program:
//   optimize objective' z  s.t. rows, z_j >= 0 or free.
struct LinearProgram {
  Eigen::VectorXd objective;
  Sense sense = Sense::Maximize;
  std::vector<LinearRow> rows;
  std::vector<VarBound> bounds;
  std::vector<std::string> var_names;  // optional, used by the text dump

  int num_vars() const { return static_cast<int>(objective.size()); }

  // Creates a program with `n` variables, zero objective, all bounds >= 0.
  static LinearProgram with_vars(int n, Sense sense = Sense::Maximize);

  void add_row(Eigen::VectorXd coeffs, Relation rel, double rhs) {
    rows.push_back({std::move(coeffs), rel, rhs});
  }

  bool operator==(const LinearProgram& o) const {
    return sense == o.sense && objective == o.objective && rows == o.rows &&
           bounds == o.bounds;
  }
};

// ||A z + b||_2 <= c' z + e
struct SecondOrderCone {
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  Eigen::VectorXd c;
  double e = 0.0;
  std::string label;
};

// A linear program plus second-order-cone rows. Convex by construction.
struct ConicProgram {
  LinearProgram linear;
  std::vector<SecondOrderCone> cones;

  int num_vars() const { return linear.num_vars(); }
};

// Throws std::invalid_argument when a row or cone does not match the
// variable count.
void check_well_formed(const LinearProgram& p);
void check_well_formed(const ConicProgram& p);

enum class SolveStatus { Optimal, Infeasible, Unbounded, NumericalFailure, IterationLimit };

const char* to_string(SolveStatus s);

struct SolverOptions {
  double feas_tol = 1e-8;
  double gap_tol = 1e-8;
  int max_iterations = 200;     // interior point
  long max_pivots = 100000;     // simplex
  bool equilibrate = true;
  int equilibration_passes = 15;
};

struct SolveOutcome {
  SolveStatus status = SolveStatus::NumericalFailure;
  Eigen::VectorXd x;
  double objective = 0.0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double gap = 0.0;
  int iterations = 0;
  double wall_seconds = 0.0;

  bool optimal() const { return status == SolveStatus::Optimal; }
};

// Dense two-phase simplex with Bland's rule.
SolveOutcome solve_lp(const LinearProgram& p, const SolverOptions& opts = {});

// Homogeneous self-dual primal-dual interior point method with
// Nesterov-Todd scaling and Mehrotra correction.
SolveOutcome solve_socp(const ConicProgram& p, const SolverOptions& opts = {});

// Text dump, one constraint per line; cone rows are prefixed `SOC:`.
std::string dump_program(const LinearProgram& p);
std::string dump_program(const ConicProgram& p);

}  // namespace sdea
