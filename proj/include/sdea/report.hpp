#pragma once

#include "sdea/audit.hpp"
#include "sdea/types.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace sdea::io {

enum class ModelKind { Directional, CcDirectional, Radial, CcRadial, Farrell, CcFarrell };
enum class OutputFormat { Table, Json, Csv };

ModelKind parse_model(const std::string& s);
const char* to_string(ModelKind m);
bool is_chance_constrained(ModelKind m);
OutputFormat parse_format(const std::string& s);
ReturnsToScale parse_rts(const std::string& s);  // crs | vrs | nirs | ndrs | grs:L,U

struct RunConfig {
  std::string data_path;
  std::optional<std::string> cov_path;
  std::vector<double> c_values;  // ScalarIdentity(c) on every output, one result row per value
  std::optional<ModelKind> model;
  bool protocol = false;  // no direction given means D- = 0, D+ = I
  std::optional<Eigen::VectorXd> d_minus, d_plus;  // stochastic diagonal direction
  std::optional<Eigen::VectorXd> g_minus, g_plus;  // fixed direction
  double alpha = 0.05;
  ReturnsToScale rts;
  Eigen::VectorXd w_minus, w_plus;  // empty: unit weights
  std::vector<std::string> dmus;    // names or 1-based indices; empty: all
  OutputFormat format = OutputFormat::Table;
  long samples = 100000;
  std::uint64_t seed = 42;
  SolverOptions solver;
};

// Fills what `base` leaves open with the protocol defaults: cc-directional,
// D- = 0, D+ = I, outputs ScalarIdentity(c) for c in {0, 0.5, 1} (unless a
// covariance file is given). alpha 0.05, CRS and unit weights are the
// RunConfig defaults already.
RunConfig paper_protocol(RunConfig base = {});

// Direction, weights, alpha and RTS as a ModelConfig for dataset d.
// Directional models need either (d-, d+) or (g-, g+); a missing half
// of a pair is zero. Throws ConfigError.
ModelConfig model_config(const RunConfig& cfg, const Dataset& d);

// 0-based DMU indices selected by cfg.dmus (all when empty).
std::vector<int> select_dmus(const RunConfig& cfg, const Dataset& d);

struct DmuResult {
  int dmu = 0;
  EvaluationResult result;
  std::optional<double> score;  // theta or phi for radial blocks
};

struct ReportRow {
  std::optional<double> c;  // output noise level, absent when not swept
  std::vector<DmuResult> cells;
};

struct ReportBlock {
  std::string title;
  std::string score_name;  // "theta", "phi" or empty
  std::vector<ReportRow> rows;
};

struct Report {
  std::string model;
  std::string settings;  // one-line summary of direction, alpha, RTS
  std::vector<std::string> dmu_names;  // all DMUs of the dataset
  std::vector<ReportBlock> blocks;
};

// Evaluates every selected DMU. Solver failures surface as ModelError
// whose message names the DMU and noise level.
Report evaluate(const RunConfig& cfg);

std::string render_table(const Report& r);
std::string render_csv(const Report& r);
std::string to_json(const Report& r);
Report report_from_json(const std::string& text);

struct AuditEntry {
  std::string block;  // which model variant was audited
  std::optional<double> c;
  std::string dmu_name;
  AuditReport report;
};

std::vector<AuditEntry> audit(const RunConfig& cfg);
bool all_pass(const std::vector<AuditEntry>& entries);
std::string render_audit_table(const std::vector<AuditEntry>& entries);
std::string render_audit_csv(const std::vector<AuditEntry>& entries);
std::string audit_to_json(const std::vector<AuditEntry>& entries);

// Command drivers: write the rendering to `out`, diagnostics to `err`,
// return the process exit code (0 ok, 2 config/parse, 3 solver, 4 audit).
int run_eval(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_audit(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_report(const std::string& json_path, OutputFormat format, std::ostream& out,
               std::ostream& err);

}  // namespace sdea::io
