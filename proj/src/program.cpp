#include "sdea/program.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <string>

namespace sdea {

LinearProgram LinearProgram::with_vars(int n, Sense sense) {
  LinearProgram p;
  p.objective = Eigen::VectorXd::Zero(n);
  p.sense = sense;
  p.bounds.assign(n, VarBound::NonNegative);
  return p;
}

void check_well_formed(const LinearProgram& p) {
  const auto n = p.objective.size();
  if (static_cast<Eigen::Index>(p.bounds.size()) != n)
    throw std::invalid_argument("bounds size does not match variable count");
  for (std::size_t k = 0; k < p.rows.size(); ++k)
    if (p.rows[k].coeffs.size() != n)
      throw std::invalid_argument("row " + std::to_string(k) + " has " +
                                  std::to_string(p.rows[k].coeffs.size()) +
                                  " coefficients, expected " + std::to_string(n));
}

void check_well_formed(const ConicProgram& p) {
  check_well_formed(p.linear);
  const auto n = p.linear.objective.size();
  for (std::size_t k = 0; k < p.cones.size(); ++k) {
    const auto& c = p.cones[k];
    if (c.A.cols() != n || c.c.size() != n || c.A.rows() != c.b.size())
      throw std::invalid_argument("cone " + std::to_string(k) + " has inconsistent dimensions");
  }
}

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "Optimal";
    case SolveStatus::Infeasible: return "Infeasible";
    case SolveStatus::Unbounded: return "Unbounded";
    case SolveStatus::NumericalFailure: return "NumericalFailure";
    case SolveStatus::IterationLimit: return "IterationLimit";
  }
  return "?";
}

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_vec(std::ostream& os, const Eigen::VectorXd& v) {
  os << '[';
  for (Eigen::Index k = 0; k < v.size(); ++k) os << (k ? " " : "") << num(v[k]);
  os << ']';
}

const char* rel(Relation r) {
  switch (r) {
    case Relation::LessEqual: return "<=";
    case Relation::Equal: return "=";
    case Relation::GreaterEqual: return ">=";
  }
  return "?";
}

void write_linear(std::ostream& os, const LinearProgram& p) {
  os << "VARS:";
  for (int j = 0; j < p.num_vars(); ++j)
    os << ' ' << (j < static_cast<int>(p.var_names.size()) ? p.var_names[j] : "z" + std::to_string(j));
  os << "\nBOUNDS:";
  for (auto b : p.bounds) os << (b == VarBound::Free ? " free" : " >=0");
  os << '\n' << (p.sense == Sense::Maximize ? "MAX: " : "MIN: ");
  write_vec(os, p.objective);
  os << '\n';
  for (const auto& r : p.rows) {
    os << "ROW: ";
    write_vec(os, r.coeffs);
    os << ' ' << rel(r.relation) << ' ' << num(r.rhs) << '\n';
  }
}

}  // namespace

std::string dump_program(const LinearProgram& p) {
  std::ostringstream os;
  write_linear(os, p);
  return os.str();
}

std::string dump_program(const ConicProgram& p) {
  std::ostringstream os;
  write_linear(os, p.linear);
  for (const auto& c : p.cones) {
    os << "SOC:";
    if (!c.label.empty()) os << ' ' << c.label;
    os << " c=";
    write_vec(os, c.c);
    os << " e=" << num(c.e) << " b=";
    write_vec(os, c.b);
    os << " A=[";
    for (Eigen::Index k = 0; k < c.A.rows(); ++k) {
      if (k) os << ';';
      write_vec(os, c.A.row(k).transpose());
    }
    os << "]\n";
  }
  return os.str();
}

}  // namespace sdea
