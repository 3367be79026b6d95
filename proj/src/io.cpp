#include "sdea/io.hpp"

#include "sdea/core.hpp"
#include "sdea/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace sdea::io {

namespace {

using nlohmann::json;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

// Comma split with double-quoted fields ("" inside quotes is a quote).
std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t k = 0; k < line.size(); ++k) {
    const char ch = line[k];
    if (quoted) {
      if (ch == '"' && k + 1 < line.size() && line[k + 1] == '"') {
        cur += '"';
        ++k;
      } else if (ch == '"') {
        quoted = false;
      } else {
        cur += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(trim(cur));
  return out;
}

std::string where(const std::string& source, long row, long col, const std::string& header) {
  std::ostringstream os;
  os << source << ": row " << row << ", column " << col;
  if (!header.empty()) os << " (" << header << ")";
  return os.str();
}

bool parse_number(const std::string& s, double& v) {
  if (s.empty()) return false;
  const char* first = s.data();
  if (*first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
  return ec == std::errc() && ptr == s.data() + s.size();
}

std::string side_word(bool input) { return input ? "inputs" : "outputs"; }

CovarianceSpec spec_from_json(const json& j, const std::string& ctx) {
  if (!j.is_object()) throw ParseError(ctx + ": covariance spec must be an object");
  for (const auto& [key, _] : j.items())
    if (key != "kind" && key != "c" && key != "var" && key != "matrix")
      throw ParseError(ctx + ": unknown key '" + key + "'");
  if (!j.contains("kind") || !j["kind"].is_string())
    throw ParseError(ctx + ": missing string field 'kind'");
  const std::string kind = j["kind"];
  auto only = [&](const char* allowed) {
    for (const auto& [key, _] : j.items())
      if (key != "kind" && key != allowed)
        throw ParseError(ctx + ": key '" + key + "' does not belong to kind '" + kind + "'");
  };
  try {
    if (kind == "zero") {
      only("");
      return cov::Zero{};
    }
    if (kind == "scalar") {
      only("c");
      return cov::ScalarIdentity{j.at("c").get<double>()};
    }
    if (kind == "diagonal") {
      only("var");
      const auto v = j.at("var").get<std::vector<double>>();
      return cov::Diagonal{Eigen::Map<const Eigen::VectorXd>(v.data(), v.size())};
    }
    if (kind == "full") {
      only("matrix");
      const auto rows = j.at("matrix").get<std::vector<std::vector<double>>>();
      Eigen::MatrixXd m(rows.size(), rows.empty() ? 0 : rows.front().size());
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != static_cast<std::size_t>(m.cols()))
          throw ParseError(ctx + ": ragged matrix row " + std::to_string(r + 1));
        for (std::size_t k = 0; k < rows[r].size(); ++k) m(r, k) = rows[r][k];
      }
      return cov::Full{m};
    }
  } catch (const json::exception& e) {
    throw ParseError(ctx + ": " + e.what());
  }
  throw ParseError(ctx + ": unknown kind '" + kind + "' (zero | scalar | diagonal | full)");
}

void fill_side(const json& j, const std::vector<std::string>& names, bool input,
               std::vector<CovarianceSpec>& out) {
  out.assign(names.size(), cov::Zero{});
  if (!j.is_object()) throw ParseError("'" + side_word(input) + "' must be an object");
  if (j.contains("all"))
    for (auto& s : out) s = spec_from_json(j["all"], side_word(input) + ".all");
  for (const auto& [key, val] : j.items()) {
    if (key == "all") continue;
    const auto it = std::find(names.begin(), names.end(), key);
    if (it == names.end())
      throw ParseError("unknown " + std::string(input ? "input" : "output") + " '" + key + "'");
    out[it - names.begin()] = spec_from_json(val, side_word(input) + "." + key);
  }
}

}  // namespace

Dataset parse_dataset_csv(std::istream& in, const std::string& source) {
  std::string line;
  long row = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++row;
    if (!trim(line).empty()) {
      header = split_csv(line);
      break;
    }
  }
  if (header.empty()) throw ParseError(source + ": empty file");
  if (header[0].rfind("\xEF\xBB\xBF", 0) == 0) header[0].erase(0, 3);  // BOM
  if (header[0] != "dmu")
    throw ParseError(where(source, row, 1, header[0]) + ": first column must be 'dmu'");

  std::vector<int> in_cols, out_cols;
  std::vector<std::string> in_names, out_names;
  for (std::size_t k = 1; k < header.size(); ++k) {
    const auto& h = header[k];
    if (h.rfind("in:", 0) == 0 && h.size() > 3) {
      in_cols.push_back(static_cast<int>(k));
      in_names.push_back(h.substr(3));
    } else if (h.rfind("out:", 0) == 0 && h.size() > 4) {
      out_cols.push_back(static_cast<int>(k));
      out_names.push_back(h.substr(4));
    } else {
      throw ParseError(where(source, row, static_cast<long>(k + 1), h) +
                       ": expected 'in:<name>' or 'out:<name>'");
    }
  }
  if (in_cols.empty()) throw ParseError(source + ": no input columns");
  if (out_cols.empty()) throw ParseError(source + ": no output columns");

  std::vector<std::string> dmus;
  std::vector<std::vector<double>> values;
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    auto fields = split_csv(line);
    if (fields.size() != header.size()) {
      const auto col = static_cast<long>(std::min(fields.size(), header.size()) + 1);
      throw ParseError(where(source, row, col, "") + ": expected " +
                       std::to_string(header.size()) + " fields, got " +
                       std::to_string(fields.size()));
    }
    std::vector<double> v(header.size(), 0.0);
    for (std::size_t k = 1; k < fields.size(); ++k)
      if (!parse_number(fields[k], v[k]))
        throw ParseError(where(source, row, static_cast<long>(k + 1), header[k]) +
                         ": not a number '" + fields[k] + "'");
    dmus.push_back(fields[0].empty() ? "DMU " + std::to_string(dmus.size() + 1) : fields[0]);
    values.push_back(std::move(v));
  }
  if (dmus.empty()) throw ParseError(source + ": no DMU rows");

  const int n = static_cast<int>(dmus.size());
  Eigen::MatrixXd x(in_cols.size(), n), y(out_cols.size(), n);
  for (int j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < in_cols.size(); ++i) x(i, j) = values[j][in_cols[i]];
    for (std::size_t r = 0; r < out_cols.size(); ++r) y(r, j) = values[j][out_cols[r]];
  }
  auto d = Dataset::from_means(std::move(x), std::move(y));
  d.dmu_names = std::move(dmus);
  d.input_names = std::move(in_names);
  d.output_names = std::move(out_names);
  return d;
}

Dataset read_dataset_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError(path + ": cannot open");
  return parse_dataset_csv(f, path);
}

VariableCovariances parse_covariance_spec(const std::string& json_text, const Dataset& d) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("covariance spec: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("covariance spec must be a JSON object");
  VariableCovariances c;
  c.inputs.assign(d.num_inputs(), cov::Zero{});
  c.outputs.assign(d.num_outputs(), cov::Zero{});
  for (const auto& [key, val] : j.items()) {
    if (key == "inputs")
      fill_side(val, d.input_names, true, c.inputs);
    else if (key == "outputs")
      fill_side(val, d.output_names, false, c.outputs);
    else
      throw ParseError("covariance spec: unknown key '" + key + "' (inputs | outputs)");
  }
  return c;
}

void apply_covariances(Dataset& d, const VariableCovariances& cov) {
  const int n = d.num_dmus();
  auto expand_all = [&](const std::vector<CovarianceSpec>& specs, std::vector<Eigen::MatrixXd>& out,
                        const std::vector<std::string>& names) {
    for (std::size_t k = 0; k < specs.size(); ++k) {
      try {
        out[k] = expand(specs[k], n);
      } catch (const std::invalid_argument& e) {
        throw ConfigError("covariance of '" + names[k] + "': " + e.what());
      }
    }
  };
  expand_all(cov.inputs, d.input_cov, d.input_names);
  expand_all(cov.outputs, d.output_cov, d.output_names);
}

Dataset with_output_noise(Dataset d, double c) {
  for (auto& s : d.output_cov) s = expand(cov::ScalarIdentity{c}, d.num_dmus());
  return d;
}

Dataset load_dataset(const std::string& data_path, const std::optional<std::string>& cov_path) {
  auto d = read_dataset_csv(data_path);
  if (cov_path) {
    std::ifstream f(*cov_path);
    if (!f) throw ParseError(*cov_path + ": cannot open");
    std::stringstream text;
    text << f.rdbuf();
    apply_covariances(d, parse_covariance_spec(text.str(), d));
  }
  const auto report = validate_dataset(d);
  if (!report.ok()) {
    std::ostringstream os;
    os << "invalid dataset " << data_path << ":";
    for (const auto& issue : report.issues) {
      os << "\n  " << issue.message;
      const bool in = issue.side == VariableSide::Input;
      if (issue.kind == IssueKind::NonPositiveMean || issue.kind == IssueKind::NonFinite) {
        if (issue.dmu >= 0 && issue.variable >= 0)
          os << " at DMU '" << d.dmu_names[issue.dmu] << "', column '" << (in ? "in:" : "out:")
             << (in ? d.input_names : d.output_names)[issue.variable] << "'";
      }
    }
    throw ConfigError(os.str());
  }
  return d;
}

}  // namespace sdea::io
