#include "sdea/report.hpp"

#include "sdea/chance_constrained.hpp"
#include "sdea/core.hpp"
#include "sdea/deterministic.hpp"
#include "sdea/errors.hpp"
#include "sdea/io.hpp"

#include <nlohmann/json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace sdea::io {

namespace {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Formatting helpers

std::string shortest(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string fixed3(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(3) << v;
  auto s = os.str();
  if (s == "-0.000") s = "0.000";
  return s;
}

std::string fixed6(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(6) << v;
  return os.str();
}

std::string vec_text(const Eigen::VectorXd& v) {
  std::string s = "(";
  for (Eigen::Index k = 0; k < v.size(); ++k) s += (k ? ", " : "") + shortest(v[k]);
  return s + ")";
}

std::string c_label(const std::optional<double>& c) { return c ? shortest(*c) : "-"; }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

// ---------------------------------------------------------------------------
// Model variants

struct Solved {
  EvaluationResult result;
  std::optional<double> score;
  ModelConfig audit_cfg;  // direction under which the point is audited
};

struct Variant {
  std::string title;
  std::string score_name;
  std::function<Solved(const Dataset&, int)> solve;
};

ModelConfig with_direction(const ModelConfig& base, DirectionSpec dir) {
  ModelConfig c = base;
  c.direction = std::move(dir);
  return c;
}

std::vector<Variant> variants(ModelKind kind, const ModelConfig& mc, int m, int s) {
  using Eigen::VectorXd;
  const auto unit = with_direction(mc, StochasticDiagonal{VectorXd::Ones(m), VectorXd::Ones(s)});
  const auto in_dir = with_direction(mc, StochasticDiagonal{VectorXd::Ones(m), VectorXd::Zero(s)});
  const auto out_dir =
      with_direction(mc, StochasticDiagonal{VectorXd::Zero(m), VectorXd::Ones(s)});
  switch (kind) {
    case ModelKind::Directional:
      return {{"directional", "", [mc](const Dataset& d, int o) {
                 return Solved{solve_directional(d, mc, o), std::nullopt, mc};
               }}};
    case ModelKind::CcDirectional: {
      if (!is_stochastic(mc.direction))
        return {{"deterministic direction", "", [mc](const Dataset& d, int o) {
                   return Solved{solve_cc_directional(d, mc, o), std::nullopt, mc};
                 }}};
      return {{"stochastic direction", "",
               [mc](const Dataset& d, int o) {
                 return Solved{solve_cc_directional(d, mc, o), std::nullopt, mc};
               }},
              {"associated deterministic direction", "", [mc](const Dataset& d, int o) {
                 const auto a = associate(mc, d, o);
                 return Solved{solve_cc_directional(d, a, o), std::nullopt, a};
               }}};
    }
    case ModelKind::Radial:
    case ModelKind::CcRadial: {
      const bool cc = kind == ModelKind::CcRadial;
      auto one = [=](Orientation orient, const ModelConfig& acfg) {
        return [=](const Dataset& d, int o) {
          const auto r = cc ? solve_cc_radial(d, mc, o, orient) : solve_radial(d, mc, o, orient);
          return Solved{r.result, r.score, acfg};
        };
      };
      return {{"input-oriented, theta = 1 - beta*", "theta", one(Orientation::Input, in_dir)},
              {"output-oriented, phi = 1 + beta*", "phi", one(Orientation::Output, out_dir)}};
    }
    case ModelKind::Farrell:
      return {{"Farrell, D- = I, D+ = I", "", [unit](const Dataset& d, int o) {
                 return Solved{solve_directional(d, unit, o), std::nullopt, unit};
               }}};
    case ModelKind::CcFarrell:
      return {{"Farrell, D- = I, D+ = I", "", [unit](const Dataset& d, int o) {
                 return Solved{solve_cc_directional(d, unit, o), std::nullopt, unit};
               }}};
  }
  throw ConfigError("unknown model");
}

std::string settings_line(ModelKind kind, const ModelConfig& mc) {
  std::ostringstream os;
  const bool directional = kind == ModelKind::Directional || kind == ModelKind::CcDirectional;
  if (directional) {
    if (const auto* s = std::get_if<StochasticDiagonal>(&mc.direction))
      os << "d- = " << vec_text(s->d_minus) << ", d+ = " << vec_text(s->d_plus) << "; ";
    else if (const auto* g = std::get_if<DeterministicVector>(&mc.direction))
      os << "g- = " << vec_text(g->g_minus) << ", g+ = " << vec_text(g->g_plus) << "; ";
  }
  if (is_chance_constrained(kind)) os << "alpha = " << shortest(mc.alpha) << "; ";
  os << "rts = " << to_string(mc.rts);
  if (mc.w_minus.size() || mc.w_plus.size()) {
    os << "; w- = " << (mc.w_minus.size() ? vec_text(mc.w_minus) : "unit")
       << ", w+ = " << (mc.w_plus.size() ? vec_text(mc.w_plus) : "unit");
  }
  return os.str();
}

std::vector<std::pair<std::optional<double>, Dataset>> noise_levels(const RunConfig& cfg) {
  if (cfg.cov_path && !cfg.c_values.empty())
    throw ConfigError("give either a covariance file or a list of c values, not both");
  auto base = load_dataset(cfg.data_path, cfg.cov_path);
  std::vector<std::pair<std::optional<double>, Dataset>> out;
  if (cfg.c_values.empty()) {
    out.emplace_back(std::nullopt, std::move(base));
    return out;
  }
  for (double c : cfg.c_values) {
    if (!(c >= 0.0) || !std::isfinite(c))
      throw ConfigError("c must be a finite value >= 0, got " + shortest(c));
    out.emplace_back(c, with_output_noise(base, c));
  }
  return out;
}

ModelKind require_model(const RunConfig& cfg) {
  if (!cfg.model) throw ConfigError("no model selected; use --model or --protocol paper-s4");
  return *cfg.model;
}

Solved solve_named(const Variant& v, const Dataset& d, int o, const std::optional<double>& c) {
  try {
    return v.solve(d, o);
  } catch (const ModelError& e) {
    std::string detail = e.what();
    const std::string prefix = e.stage() + ": ";
    if (detail.rfind(prefix, 0) == 0) detail.erase(0, prefix.size());
    std::string where = "DMU '" + d.dmu_names[o] + "'";
    if (c) where += " at c = " + shortest(*c);
    throw ModelError(e.stage(), where + " (" + v.title + "): " + detail);
  }
}

// ---------------------------------------------------------------------------
// JSON

json vec_json(const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

Eigen::VectorXd vec_from(const json& j) {
  const auto v = j.get<std::vector<double>>();
  return Eigen::Map<const Eigen::VectorXd>(v.data(), v.size());
}

json stage_json(const StageInfo& s) {
  return {{"status", to_string(s.status)},
          {"iterations", s.iterations},
          {"primal_residual", s.primal_residual},
          {"dual_residual", s.dual_residual},
          {"wall_seconds", s.wall_seconds}};
}

StageInfo stage_from(const json& j) {
  StageInfo s;
  const std::string st = j.at("status");
  for (auto k : {SolveStatus::Optimal, SolveStatus::Infeasible, SolveStatus::Unbounded,
                 SolveStatus::NumericalFailure, SolveStatus::IterationLimit})
    if (st == to_string(k)) s.status = k;
  s.iterations = j.at("iterations");
  s.primal_residual = j.at("primal_residual");
  s.dual_residual = j.at("dual_residual");
  s.wall_seconds = j.at("wall_seconds");
  return s;
}

Efficiency efficiency_from(const std::string& s) {
  for (auto e : {Efficiency::Efficient, Efficiency::WeaklyEfficient, Efficiency::Inefficient})
    if (s == to_string(e)) return e;
  throw ParseError("unknown efficiency status '" + s + "'");
}

json opt_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> opt_from(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

}  // namespace

// ---------------------------------------------------------------------------
// Parsing

ModelKind parse_model(const std::string& s) {
  for (auto m : {ModelKind::Directional, ModelKind::CcDirectional, ModelKind::Radial,
                 ModelKind::CcRadial, ModelKind::Farrell, ModelKind::CcFarrell})
    if (s == to_string(m)) return m;
  throw ConfigError("unknown model '" + s +
                    "' (directional | cc-directional | radial | cc-radial | farrell | cc-farrell)");
}

const char* to_string(ModelKind m) {
  switch (m) {
    case ModelKind::Directional: return "directional";
    case ModelKind::CcDirectional: return "cc-directional";
    case ModelKind::Radial: return "radial";
    case ModelKind::CcRadial: return "cc-radial";
    case ModelKind::Farrell: return "farrell";
    case ModelKind::CcFarrell: return "cc-farrell";
  }
  return "?";
}

bool is_chance_constrained(ModelKind m) {
  return m == ModelKind::CcDirectional || m == ModelKind::CcRadial || m == ModelKind::CcFarrell;
}

OutputFormat parse_format(const std::string& s) {
  if (s == "table") return OutputFormat::Table;
  if (s == "json") return OutputFormat::Json;
  if (s == "csv") return OutputFormat::Csv;
  throw ConfigError("unknown format '" + s + "' (table | json | csv)");
}

ReturnsToScale parse_rts(const std::string& s) {
  if (s == "crs") return ReturnsToScale::crs();
  if (s == "vrs") return ReturnsToScale::vrs();
  if (s == "nirs") return ReturnsToScale::nirs();
  if (s == "ndrs") return ReturnsToScale::ndrs();
  if (s.rfind("grs:", 0) == 0) {
    const auto comma = s.find(',', 4);
    double lo = 0, hi = 0;
    if (comma != std::string::npos) {
      const auto a = std::from_chars(s.data() + 4, s.data() + comma, lo);
      const auto b = std::from_chars(s.data() + comma + 1, s.data() + s.size(), hi);
      if (a.ec == std::errc() && a.ptr == s.data() + comma && b.ec == std::errc() &&
          b.ptr == s.data() + s.size())
        return ReturnsToScale::grs(lo, hi);
    }
  }
  throw ConfigError("unknown returns to scale '" + s + "' (crs | vrs | nirs | ndrs | grs:L,U)");
}

RunConfig paper_protocol(RunConfig base) {
  base.protocol = true;
  if (!base.model) base.model = ModelKind::CcDirectional;
  if (!base.cov_path && base.c_values.empty()) base.c_values = {0.0, 0.5, 1.0};
  return base;
}

ModelConfig model_config(const RunConfig& cfg, const Dataset& d) {
  const int m = d.num_inputs(), s = d.num_outputs();
  const bool stoch = cfg.d_minus || cfg.d_plus;
  const bool fixed = cfg.g_minus || cfg.g_plus;
  if (stoch && fixed) throw ConfigError("give either --d-minus/--d-plus or --g-minus/--g-plus");
  auto half = [](const std::optional<Eigen::VectorXd>& v, int size, const char* flag) {
    if (!v) return Eigen::VectorXd(Eigen::VectorXd::Zero(size));
    if (v->size() != size)
      throw ConfigError(std::string(flag) + " has " + std::to_string(v->size()) +
                        " entries, the dataset has " + std::to_string(size));
    return *v;
  };
  ModelConfig mc;
  if (fixed) {
    mc.direction = DeterministicVector{half(cfg.g_minus, m, "--g-minus"),
                                       half(cfg.g_plus, s, "--g-plus")};
  } else if (stoch) {
    mc.direction = StochasticDiagonal{half(cfg.d_minus, m, "--d-minus"),
                                      half(cfg.d_plus, s, "--d-plus")};
  } else {
    const auto kind = cfg.model.value_or(ModelKind::CcDirectional);
    if (!cfg.protocol && (kind == ModelKind::Directional || kind == ModelKind::CcDirectional))
      throw ConfigError("directional models need --d-minus/--d-plus or --g-minus/--g-plus");
    mc.direction = StochasticDiagonal{Eigen::VectorXd::Zero(m), Eigen::VectorXd::Ones(s)};
  }
  mc.alpha = cfg.alpha;
  mc.rts = cfg.rts;
  mc.solver = cfg.solver;
  if (cfg.w_minus.size()) mc.w_minus = half(cfg.w_minus, m, "--weights-minus");
  if (cfg.w_plus.size()) mc.w_plus = half(cfg.w_plus, s, "--weights-plus");
  validate_config(mc, d);
  return mc;
}

std::vector<int> select_dmus(const RunConfig& cfg, const Dataset& d) {
  std::vector<int> out;
  if (cfg.dmus.empty()) {
    for (int j = 0; j < d.num_dmus(); ++j) out.push_back(j);
    return out;
  }
  for (const auto& tok : cfg.dmus) {
    const auto it = std::find(d.dmu_names.begin(), d.dmu_names.end(), tok);
    if (it != d.dmu_names.end()) {
      out.push_back(static_cast<int>(it - d.dmu_names.begin()));
      continue;
    }
    int k = 0;
    const auto r = std::from_chars(tok.data(), tok.data() + tok.size(), k);
    if (r.ec != std::errc() || r.ptr != tok.data() + tok.size() || k < 1 || k > d.num_dmus())
      throw ConfigError("unknown DMU '" + tok + "' (use a name or an index 1.." +
                        std::to_string(d.num_dmus()) + ")");
    out.push_back(k - 1);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation

Report evaluate(const RunConfig& cfg) {
  const auto kind = require_model(cfg);
  const auto levels = noise_levels(cfg);
  const Dataset& first = levels.front().second;
  const auto mc = model_config(cfg, first);
  const auto dmus = select_dmus(cfg, first);

  Report rep;
  rep.model = to_string(kind);
  rep.settings = settings_line(kind, mc);
  rep.dmu_names = first.dmu_names;
  for (const auto& v : variants(kind, mc, first.num_inputs(), first.num_outputs())) {
    ReportBlock block{v.title, v.score_name, {}};
    for (const auto& [c, d] : levels) {
      ReportRow row{c, {}};
      for (int o : dmus) {
        auto solved = solve_named(v, d, o, c);
        row.cells.push_back({o, std::move(solved.result), solved.score});
      }
      block.rows.push_back(std::move(row));
    }
    rep.blocks.push_back(std::move(block));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Rendering

std::string render_table(const Report& r) {
  std::ostringstream os;
  os << "model: " << r.model << "\n";
  os << "settings: " << r.settings << "\n";
  for (const auto& b : r.blocks) {
    os << "\n" << b.title << "\n";
    if (b.rows.empty()) continue;
    const auto& cols = b.rows.front().cells;
    std::vector<std::size_t> width;
    for (const auto& cell : cols)
      width.push_back(std::max<std::size_t>(8, r.dmu_names.at(cell.dmu).size() + 2));
    auto line = [&](const std::string& c, const std::string& what,
                    const std::vector<std::string>& vals) {
      os << std::left << std::setw(8) << c << std::setw(7) << what << std::right;
      for (std::size_t k = 0; k < vals.size(); ++k) os << std::setw(width[k]) << vals[k];
      os << "\n";
    };
    std::vector<std::string> names;
    for (const auto& cell : cols) names.push_back(r.dmu_names.at(cell.dmu));
    line("c", "", names);
    for (const auto& row : b.rows) {
      std::vector<std::string> beta, score;
      for (const auto& cell : row.cells) {
        beta.push_back(fixed3(cell.result.beta_star));
        score.push_back(cell.score ? fixed3(*cell.score) : "");
      }
      line(c_label(row.c), "beta*", beta);
      if (!b.score_name.empty()) line(c_label(row.c), b.score_name, score);
    }
  }
  return os.str();
}

std::string render_csv(const Report& r) {
  std::ostringstream os;
  os << "block,c,dmu,beta,score,slack_objective,status\n";
  for (const auto& b : r.blocks)
    for (const auto& row : b.rows)
      for (const auto& cell : row.cells)
        os << csv_field(b.title) << "," << (row.c ? shortest(*row.c) : "") << ","
           << csv_field(r.dmu_names.at(cell.dmu)) << "," << shortest(cell.result.beta_star)
           << "," << (cell.score ? shortest(*cell.score) : "") << ","
           << shortest(cell.result.slack_objective) << "," << to_string(cell.result.status)
           << "\n";
  return os.str();
}

std::string to_json(const Report& r) {
  json blocks = json::array();
  for (const auto& b : r.blocks) {
    json rows = json::array();
    for (const auto& row : b.rows) {
      json cells = json::array();
      for (const auto& cell : row.cells) {
        const auto& e = cell.result;
        cells.push_back({{"dmu", cell.dmu + 1},
                         {"name", r.dmu_names.at(cell.dmu)},
                         {"beta", e.beta_star},
                         {"score", opt_json(cell.score)},
                         {"lambda", vec_json(e.lambda_star)},
                         {"s_minus", vec_json(e.s_minus_star)},
                         {"s_plus", vec_json(e.s_plus_star)},
                         {"slack_objective", e.slack_objective},
                         {"status", to_string(e.status)},
                         {"projected_inputs", vec_json(e.projected_inputs)},
                         {"projected_outputs", vec_json(e.projected_outputs)},
                         {"stage1", stage_json(e.stage1)},
                         {"stage2", stage_json(e.stage2)}});
      }
      rows.push_back({{"c", opt_json(row.c)}, {"results", std::move(cells)}});
    }
    blocks.push_back({{"title", b.title}, {"score_name", b.score_name}, {"rows", std::move(rows)}});
  }
  const json j = {{"model", r.model},
                  {"settings", r.settings},
                  {"dmu_names", r.dmu_names},
                  {"blocks", std::move(blocks)}};
  return j.dump(2) + "\n";
}

Report report_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    Report r;
    r.model = j.at("model");
    r.settings = j.at("settings");
    r.dmu_names = j.at("dmu_names").get<std::vector<std::string>>();
    for (const auto& jb : j.at("blocks")) {
      ReportBlock b{jb.at("title"), jb.at("score_name"), {}};
      for (const auto& jr : jb.at("rows")) {
        ReportRow row{opt_from(jr.at("c")), {}};
        for (const auto& jc : jr.at("results")) {
          DmuResult cell;
          cell.dmu = jc.at("dmu").get<int>() - 1;
          if (cell.dmu < 0 || cell.dmu >= static_cast<int>(r.dmu_names.size()))
            throw ParseError("result for unknown DMU index " + std::to_string(cell.dmu + 1));
          cell.score = opt_from(jc.at("score"));
          auto& e = cell.result;
          e.beta_star = jc.at("beta");
          e.lambda_star = vec_from(jc.at("lambda"));
          e.s_minus_star = vec_from(jc.at("s_minus"));
          e.s_plus_star = vec_from(jc.at("s_plus"));
          e.slack_objective = jc.at("slack_objective");
          e.status = efficiency_from(jc.at("status"));
          e.projected_inputs = vec_from(jc.at("projected_inputs"));
          e.projected_outputs = vec_from(jc.at("projected_outputs"));
          e.stage1 = stage_from(jc.at("stage1"));
          e.stage2 = stage_from(jc.at("stage2"));
          row.cells.push_back(std::move(cell));
        }
        b.rows.push_back(std::move(row));
      }
      r.blocks.push_back(std::move(b));
    }
    return r;
  } catch (const json::exception& e) {
    throw ParseError(std::string("results JSON: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Audit

std::vector<AuditEntry> audit(const RunConfig& cfg) {
  const auto kind = require_model(cfg);
  if (cfg.samples < 1) throw ConfigError("--samples must be >= 1");
  const auto levels = noise_levels(cfg);
  const Dataset& first = levels.front().second;
  const auto mc = model_config(cfg, first);
  const auto dmus = select_dmus(cfg, first);
  const auto vars = variants(kind, mc, first.num_inputs(), first.num_outputs());

  std::vector<AuditEntry> out;
  for (const auto& [c, d] : levels) {
    const auto batch = sample_scenarios(d, cfg.samples, cfg.seed);
    for (const auto& v : vars) {
      for (int o : dmus) {
        const auto solved = solve_named(v, d, o, c);
        out.push_back(
            {v.title, c, d.dmu_names[o], audit_solution(solved.result, d, solved.audit_cfg, o, batch)});
      }
    }
  }
  return out;
}

bool all_pass(const std::vector<AuditEntry>& entries) {
  for (const auto& e : entries)
    if (!e.report.all_pass()) return false;
  return true;
}

std::string render_audit_table(const std::vector<AuditEntry>& entries) {
  std::ostringstream os;
  if (!entries.empty()) {
    const auto& r = entries.front().report;
    os << "audit: N = " << r.count << ", seed = " << r.seed << ", alpha = " << shortest(r.alpha)
       << ", threshold 1 - alpha - 3 stderr per row\n";
  }
  int failed = 0;
  for (const auto& e : entries) {
    os << "\n" << e.block << ", c = " << c_label(e.c) << ", " << e.dmu_name << "\n";
    os << "  " << std::left << std::setw(8) << "row" << std::right << std::setw(10) << "p_hat"
       << std::setw(10) << "stderr" << std::setw(11) << "threshold" << "  result\n";
    for (const auto& row : e.report.rows) {
      os << "  " << std::left << std::setw(8) << row.label << std::right << std::setw(10)
         << fixed6(row.p_hat) << std::setw(10) << fixed6(row.std_error) << std::setw(11)
         << fixed6(row.threshold) << "  " << (row.pass ? "pass" : "FAIL") << "\n";
      if (!row.pass) ++failed;
    }
    os << "  " << std::left << std::setw(8) << "joint" << std::right << std::setw(10)
       << fixed6(e.report.joint) << "  (informational)\n";
  }
  os << "\n" << (failed ? std::to_string(failed) + " row(s) FAIL" : "all rows pass") << "\n";
  return os.str();
}

std::string render_audit_csv(const std::vector<AuditEntry>& entries) {
  std::ostringstream os;
  os << "block,c,dmu,row,p_hat,std_error,threshold,pass,joint,samples,seed\n";
  for (const auto& e : entries)
    for (const auto& row : e.report.rows)
      os << csv_field(e.block) << "," << (e.c ? shortest(*e.c) : "") << ","
         << csv_field(e.dmu_name) << "," << row.label << "," << shortest(row.p_hat) << ","
         << shortest(row.std_error) << "," << shortest(row.threshold) << ","
         << (row.pass ? "true" : "false") << "," << shortest(e.report.joint) << ","
         << e.report.count << "," << e.report.seed << "\n";
  return os.str();
}

std::string audit_to_json(const std::vector<AuditEntry>& entries) {
  json arr = json::array();
  for (const auto& e : entries) {
    json rows = json::array();
    for (const auto& row : e.report.rows)
      rows.push_back({{"label", row.label},
                      {"p_hat", row.p_hat},
                      {"std_error", row.std_error},
                      {"threshold", row.threshold},
                      {"pass", row.pass}});
    arr.push_back({{"block", e.block},
                   {"c", opt_json(e.c)},
                   {"dmu", e.report.dmu + 1},
                   {"name", e.dmu_name},
                   {"alpha", e.report.alpha},
                   {"samples", e.report.count},
                   {"seed", e.report.seed},
                   {"rows", std::move(rows)},
                   {"joint", e.report.joint},
                   {"all_pass", e.report.all_pass()}});
  }
  return arr.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Drivers

namespace {

template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const ModelError& e) {
    err << "solver error: " << e.what() << "\n";
    return 3;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {  // ConfigError and bad specs
    err << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    err << "config error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace

int run_eval(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto rep = evaluate(cfg);
    switch (cfg.format) {
      case OutputFormat::Table: out << render_table(rep); break;
      case OutputFormat::Json: out << to_json(rep); break;
      case OutputFormat::Csv: out << render_csv(rep); break;
    }
    return 0;
  });
}

int run_audit(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto entries = audit(cfg);
    switch (cfg.format) {
      case OutputFormat::Table: out << render_audit_table(entries); break;
      case OutputFormat::Json: out << audit_to_json(entries); break;
      case OutputFormat::Csv: out << render_audit_csv(entries); break;
    }
    return all_pass(entries) ? 0 : 4;
  });
}

int run_report(const std::string& json_path, OutputFormat format, std::ostream& out,
               std::ostream& err) {
  return guarded(err, [&] {
    std::ifstream f(json_path);
    if (!f) throw ParseError(json_path + ": cannot open");
    std::stringstream text;
    text << f.rdbuf();
    const auto rep = report_from_json(text.str());
    switch (format) {
      case OutputFormat::Table: out << render_table(rep); break;
      case OutputFormat::Json: out << to_json(rep); break;
      case OutputFormat::Csv: out << render_csv(rep); break;
    }
    return 0;
  });
}

}  // namespace sdea::io
