#include "sdea/errors.hpp"
#include "sdea/report.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <iostream>

using namespace sdea;
using namespace sdea::io;

namespace {

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = s.find(',', start);
    out.push_back(s.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

bool to_number(const std::string& tok, double& v) {
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  while (first < last && *first == ' ') ++first;
  while (last > first && last[-1] == ' ') --last;
  if (first < last && *first == '+') ++first;
  const auto r = std::from_chars(first, last, v);
  return first < last && r.ec == std::errc() && r.ptr == last;
}

std::vector<double> number_list(const std::string& s, const std::string& flag) {
  std::vector<double> out;
  for (const auto& tok : split(s)) {
    double v = 0;
    if (!to_number(tok, v)) throw ConfigError(flag + ": not a number '" + tok + "'");
    out.push_back(v);
  }
  return out;
}

Eigen::VectorXd vector_arg(const std::string& s, const std::string& flag) {
  const auto v = number_list(s, flag);
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

struct Flags {
  std::string data, cov, model, rts, d_minus, d_plus, g_minus, g_plus, w_minus, w_plus, dmus,
      format = "table", protocol;
  double alpha = 0.05;
  long samples = 100000;
  std::uint64_t seed = 42;
};

void add_run_flags(CLI::App* cmd, Flags& f, bool audit) {
  cmd->add_option("--data", f.data, "dataset CSV (dmu,in:<name>...,out:<name>...)")->required();
  cmd->add_option("--cov", f.cov,
                  "covariance spec JSON file, or a comma list of c values applied as "
                  "ScalarIdentity(c) to every output");
  cmd->add_option("--model", f.model,
                  "directional | cc-directional | radial | cc-radial | farrell | cc-farrell");
  cmd->add_option("--alpha", f.alpha, "chance-constraint level in (0, 0.5]");
  cmd->add_option("--rts", f.rts, "crs | vrs | nirs | ndrs | grs:L,U");
  cmd->add_option("--d-minus", f.d_minus, "stochastic input direction diagonal, comma list");
  cmd->add_option("--d-plus", f.d_plus, "stochastic output direction diagonal, comma list");
  cmd->add_option("--g-minus", f.g_minus, "fixed input direction vector, comma list");
  cmd->add_option("--g-plus", f.g_plus, "fixed output direction vector, comma list");
  cmd->add_option("--weights-minus", f.w_minus, "stage-2 input slack weights, comma list");
  cmd->add_option("--weights-plus", f.w_plus, "stage-2 output slack weights, comma list");
  cmd->add_option("--dmus", f.dmus, "DMU names or 1-based indices, comma list");
  cmd->add_option("--format", f.format, "table | json | csv");
  cmd->add_option("--protocol", f.protocol, "paper-s4: cc-directional, D- = 0, D+ = I, c in {0, 0.5, 1}");
  if (audit) {
    cmd->add_option("--samples", f.samples, "Monte Carlo scenarios (default 100000)");
    cmd->add_option("--seed", f.seed, "scenario generator seed (default 42)");
  }
}

RunConfig to_run_config(const Flags& f) {
  RunConfig c;
  c.data_path = f.data;
  if (!f.cov.empty()) {
    std::vector<double> cs;
    bool numeric = true;
    for (const auto& tok : split(f.cov)) {
      double v = 0;
      if (!to_number(tok, v)) {
        numeric = false;
        break;
      }
      cs.push_back(v);
    }
    if (numeric)
      c.c_values = cs;
    else
      c.cov_path = f.cov;
  }
  if (!f.model.empty()) c.model = parse_model(f.model);
  c.alpha = f.alpha;
  if (!f.rts.empty()) c.rts = parse_rts(f.rts);
  if (!f.d_minus.empty()) c.d_minus = vector_arg(f.d_minus, "--d-minus");
  if (!f.d_plus.empty()) c.d_plus = vector_arg(f.d_plus, "--d-plus");
  if (!f.g_minus.empty()) c.g_minus = vector_arg(f.g_minus, "--g-minus");
  if (!f.g_plus.empty()) c.g_plus = vector_arg(f.g_plus, "--g-plus");
  if (!f.w_minus.empty()) c.w_minus = vector_arg(f.w_minus, "--weights-minus");
  if (!f.w_plus.empty()) c.w_plus = vector_arg(f.w_plus, "--weights-plus");
  if (!f.dmus.empty()) c.dmus = split(f.dmus);
  c.format = parse_format(f.format);
  c.samples = f.samples;
  c.seed = f.seed;
  if (!f.protocol.empty()) {
    if (f.protocol != "paper-s4") throw ConfigError("unknown protocol '" + f.protocol + "'");
    c = paper_protocol(c);
  }
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stochastic DEA: chance-constrained directional models with Monte Carlo audit"};
  app.require_subcommand(1);
  Flags ef, af;
  std::string report_path, report_format = "table";
  auto* eval = app.add_subcommand("eval", "evaluate DMUs and print the score table");
  add_run_flags(eval, ef, false);
  auto* aud = app.add_subcommand("audit", "solve, then check each chance constraint by sampling");
  add_run_flags(aud, af, true);
  auto* rep = app.add_subcommand("report", "re-render saved JSON results");
  rep->add_option("--data", report_path, "results JSON written by `eval --format json`")
      ->required();
  rep->add_option("--format", report_format, "table | json | csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (eval->parsed()) return run_eval(to_run_config(ef), std::cout, std::cerr);
    if (aud->parsed()) return run_audit(to_run_config(af), std::cout, std::cerr);
    return run_report(report_path, parse_format(report_format), std::cout, std::cerr);
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }
}
