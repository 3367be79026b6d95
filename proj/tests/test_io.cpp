#include "sdea/chance_constrained.hpp"
#include "sdea/deterministic.hpp"
#include "sdea/errors.hpp"
#include "sdea/fixture.hpp"
#include "sdea/io.hpp"
#include "sdea/report.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace sdea;
using namespace sdea::io;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

const std::string kFixture = std::string(SDEA_DATA_DIR) + "/table1.csv";

class TempDir {
 public:
  TempDir() {
    path_ = std::filesystem::temp_directory_path() /
            ("sdea_io_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
             ::testing::UnitTest::GetInstance()->current_test_info()->name());
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }

  std::string write(const std::string& name, const std::string& text) const {
    const auto p = path_ / name;
    std::ofstream(p) << text;
    return p.string();
  }

 private:
  std::filesystem::path path_;
};

Dataset parse(const std::string& text) {
  std::istringstream in(text);
  return parse_dataset_csv(in, "test.csv");
}

template <class E>
std::string message_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const E& e) {
    return e.what();
  }
  return "<no exception>";
}

RunConfig fixture_run() {
  RunConfig c;
  c.data_path = kFixture;
  return c;
}

}  // namespace

TEST(Csv, BundledFixtureMatchesTable) {
  const auto d = read_dataset_csv(kFixture);
  const auto ref = table1_fixture();
  ASSERT_EQ(d.num_dmus(), 10);
  ASSERT_EQ(d.num_inputs(), 5);
  ASSERT_EQ(d.num_outputs(), 3);
  EXPECT_EQ(d.inputs, ref.inputs);
  EXPECT_EQ(d.outputs, ref.outputs);
  EXPECT_EQ(d.dmu_names, ref.dmu_names);
  EXPECT_EQ(d.input_names, ref.input_names);
  EXPECT_EQ(d.output_names, ref.output_names);
  EXPECT_EQ(d.inputs.col(0), (VectorXd{{86.13, 16.24, 48.21, 49.69, 9}}));
}

TEST(Csv, QuotingBlankLinesAndCrlf) {
  const auto d = parse("dmu,in:x,out:y\r\n\"Plant, north\",1.5,2\r\n\r\nB,+3,4e0\r\n");
  ASSERT_EQ(d.num_dmus(), 2);
  EXPECT_EQ(d.dmu_names[0], "Plant, north");
  EXPECT_EQ(d.inputs(0, 1), 3.0);
  EXPECT_EQ(d.outputs(0, 1), 4.0);
}

TEST(Csv, ErrorsCarryLocation) {
  EXPECT_EQ(message_of<ParseError>([] { parse("dmu,in:x,out:y\nA,1,2\nB,abc,3\n"); }),
            "test.csv: row 3, column 2 (in:x): not a number 'abc'");
  EXPECT_NE(message_of<ParseError>([] { parse("dmu,in:x,out:y\nA,1\n"); }).find("row 2"),
            std::string::npos);
  EXPECT_NE(message_of<ParseError>([] { parse("name,in:x,out:y\nA,1,2\n"); }).find("'dmu'"),
            std::string::npos);
  EXPECT_NE(message_of<ParseError>([] { parse("dmu,in:x,z\nA,1,2\n"); }).find("column 3 (z)"),
            std::string::npos);
  EXPECT_THROW(parse("dmu,in:x\nA,1\n"), ParseError);
  EXPECT_THROW(parse("dmu,in:x,out:y\n"), ParseError);
  EXPECT_THROW(parse(""), ParseError);
  EXPECT_THROW(read_dataset_csv("/nonexistent/file.csv"), ParseError);
}

TEST(Csv, NegativeInputNamesCell) {
  TempDir tmp;
  const auto path = tmp.write("neg.csv", "dmu,in:x,in:z,out:y\nA,1,2,3\nB,4,-1,3\n");
  const auto msg = message_of<ConfigError>([&] { load_dataset(path); });
  EXPECT_NE(msg.find("non-positive mean input (2,2)"), std::string::npos) << msg;
  EXPECT_NE(msg.find("DMU 'B'"), std::string::npos) << msg;
  EXPECT_NE(msg.find("'in:z'"), std::string::npos) << msg;
}

TEST(CovSpec, ScalarForAllOutputs) {
  auto d = table1_fixture();
  apply_covariances(d, parse_covariance_spec(R"({"outputs": {"all": {"kind": "scalar", "c": 0.5}}})", d));
  for (const auto& s : d.output_cov) EXPECT_EQ(s, 0.25 * MatrixXd::Identity(10, 10));
  for (const auto& s : d.input_cov) EXPECT_TRUE(s.isZero(0.0));
}

TEST(CovSpec, VariantsAndOverrides) {
  const auto d0 = parse("dmu,in:x,in:z,out:y\nA,1,2,3\nB,4,5,6\n");
  auto d = d0;
  apply_covariances(d, parse_covariance_spec(R"({
      "inputs": {"all": {"kind": "diagonal", "var": [0.1, 0.2]},
                 "z": {"kind": "full", "matrix": [[1, 0.5], [0.5, 2]]}},
      "outputs": {"y": {"kind": "zero"}}})", d));
  EXPECT_EQ(d.input_cov[0], (MatrixXd{{0.1, 0}, {0, 0.2}}));
  EXPECT_EQ(d.input_cov[1], (MatrixXd{{1, 0.5}, {0.5, 2}}));
  EXPECT_TRUE(d.output_cov[0].isZero(0.0));

  auto bad = [&](const std::string& text) {
    auto dd = d0;
    apply_covariances(dd, parse_covariance_spec(text, dd));
  };
  EXPECT_THROW(bad(R"({"input": {}})"), ParseError);
  EXPECT_THROW(bad(R"({"inputs": {"w": {"kind": "zero"}}})"), ParseError);
  EXPECT_THROW(bad(R"({"inputs": {"x": {"kind": "gamma"}}})"), ParseError);
  EXPECT_THROW(bad(R"({"inputs": {"x": {"kind": "scalar", "c": 1, "var": [1]}}})"), ParseError);
  EXPECT_THROW(bad(R"({"inputs": {"x": {"kind": "scalar"}}})"), ParseError);
  EXPECT_THROW(bad(R"({"inputs": {"x": {"kind": "full", "matrix": [[1, 0], [0]]}}})"), ParseError);
  EXPECT_THROW(bad(R"({"inputs": )"), ParseError);
  EXPECT_THROW(bad(R"({"inputs": {"x": {"kind": "diagonal", "var": [1, 2, 3]}}})"), ConfigError);
}

TEST(CovSpec, FileAndValidation) {
  TempDir tmp;
  const auto cov = tmp.write("cov.json", R"({"outputs": {"all": {"kind": "full",
      "matrix": [[1, 2], [2, 1]]}}})");
  const auto data = tmp.write("d.csv", "dmu,in:x,out:y\nA,1,2\nB,4,5\n");
  const auto msg = message_of<ConfigError>([&] { load_dataset(data, cov); });
  EXPECT_NE(msg.find("covariance not PSD (output 1)"), std::string::npos) << msg;
  EXPECT_NO_THROW(load_dataset(data));
}

TEST(Config, ParsersAndDefaults) {
  EXPECT_EQ(parse_model("cc-radial"), ModelKind::CcRadial);
  EXPECT_THROW(parse_model("ccr"), ConfigError);
  EXPECT_EQ(parse_format("csv"), OutputFormat::Csv);
  EXPECT_THROW(parse_format("xml"), ConfigError);
  const auto g = parse_rts("grs:0.8,1.2");
  EXPECT_EQ(g.kind, RtsKind::GRS);
  EXPECT_EQ(g.lower, 0.8);
  EXPECT_EQ(g.upper, 1.2);
  EXPECT_EQ(parse_rts("vrs").kind, RtsKind::VRS);
  EXPECT_THROW(parse_rts("grs:1"), ConfigError);
  EXPECT_THROW(parse_rts("grs:a,b"), ConfigError);

  const auto p = paper_protocol(fixture_run());
  EXPECT_EQ(p.model, ModelKind::CcDirectional);
  EXPECT_EQ(p.c_values, (std::vector<double>{0.0, 0.5, 1.0}));
  EXPECT_EQ(p.alpha, 0.05);
  EXPECT_EQ(p.rts.kind, RtsKind::CRS);
  const auto d = table1_fixture();
  const auto mc = model_config(p, d);
  const auto& dir = std::get<StochasticDiagonal>(mc.direction);
  EXPECT_EQ(dir.d_minus, VectorXd::Zero(5));
  EXPECT_EQ(dir.d_plus, VectorXd::Ones(3));
  EXPECT_EQ(mc.w_minus.size(), 0);

  auto r = fixture_run();
  r.model = ModelKind::CcDirectional;
  EXPECT_THROW(model_config(r, d), ConfigError);  // no direction
  r.d_plus = VectorXd::Ones(3);
  r.g_minus = VectorXd::Ones(5);
  EXPECT_THROW(model_config(r, d), ConfigError);  // both kinds
  r.g_minus.reset();
  r.d_plus = VectorXd::Ones(2);
  EXPECT_THROW(model_config(r, d), ConfigError);  // wrong length
  r.d_plus = VectorXd::Ones(3);
  r.alpha = 1.5;
  EXPECT_THROW(model_config(r, d), ConfigError);

  r.dmus = {"Site 3", "10", "1"};
  EXPECT_EQ(select_dmus(r, d), (std::vector<int>{2, 9, 0}));
  r.dmus = {"11"};
  EXPECT_THROW(select_dmus(r, d), ConfigError);
  r.dmus = {"Site 99"};
  EXPECT_THROW(select_dmus(r, d), ConfigError);
}

TEST(Eval, DirectionalMatchesEngine) {
  auto r = fixture_run();
  r.model = ModelKind::Directional;
  r.d_plus = VectorXd::Ones(3);
  r.c_values = {0.0};
  const auto rep = evaluate(r);
  ASSERT_EQ(rep.blocks.size(), 1u);
  const auto d = table1_fixture();
  const auto cfg = stochastic_config(VectorXd::Zero(5), VectorXd::Ones(3));
  for (const auto& cell : rep.blocks[0].rows[0].cells)
    EXPECT_EQ(cell.result.beta_star, solve_directional(d, cfg, cell.dmu).beta_star);
}

TEST(Eval, ProtocolTableShapeAndMonotone) {
  const auto rep = evaluate(paper_protocol(fixture_run()));
  ASSERT_EQ(rep.blocks.size(), 2u);
  EXPECT_EQ(rep.blocks[0].title, "stochastic direction");
  EXPECT_EQ(rep.blocks[1].title, "associated deterministic direction");
  for (const auto& b : rep.blocks) {
    ASSERT_EQ(b.rows.size(), 3u);
    for (int k = 0; k < 10; ++k) {
      EXPECT_GE(b.rows[0].cells[k].result.beta_star, b.rows[1].cells[k].result.beta_star - 1e-8);
      EXPECT_GE(b.rows[1].cells[k].result.beta_star, b.rows[2].cells[k].result.beta_star - 1e-8);
    }
  }
  const auto table = render_table(rep);
  EXPECT_NE(table.find("model: cc-directional"), std::string::npos);
  EXPECT_NE(table.find("d- = (0, 0, 0, 0, 0), d+ = (1, 1, 1); alpha = 0.05; rts = crs"),
            std::string::npos);
  EXPECT_NE(table.find("0.032"), std::string::npos);  // Site 9 at c = 0
  EXPECT_EQ(table.find("-0.000"), std::string::npos);
}

TEST(Eval, RadialReportsBothScores) {
  auto r = fixture_run();
  r.model = ModelKind::Radial;
  r.dmus = {"9"};
  const auto rep = evaluate(r);
  ASSERT_EQ(rep.blocks.size(), 2u);
  const auto& in = rep.blocks[0].rows[0].cells[0];
  const auto& out = rep.blocks[1].rows[0].cells[0];
  ASSERT_TRUE(in.score && out.score);
  EXPECT_NEAR(*in.score, 1.0 - in.result.beta_star, 1e-12);
  EXPECT_NEAR(*out.score, 1.0 + out.result.beta_star, 1e-12);
  const auto table = render_table(rep);
  EXPECT_NE(table.find("theta = 1 - beta*"), std::string::npos);
  EXPECT_NE(table.find("phi = 1 + beta*"), std::string::npos);
}

TEST(Eval, FarrellModels) {
  auto r = fixture_run();
  r.model = ModelKind::Farrell;
  const auto det = evaluate(r);
  r.model = ModelKind::CcFarrell;
  r.c_values = {0.0};
  const auto cc = evaluate(r);
  const auto d = table1_fixture();
  for (int k = 0; k < 10; ++k) {
    EXPECT_NEAR(det.blocks[0].rows[0].cells[k].result.beta_star, farrell_measure(d, k), 1e-9);
    EXPECT_NEAR(cc.blocks[0].rows[0].cells[k].result.beta_star, stochastic_farrell(d, k), 1e-7);
  }
}

TEST(Report, JsonRoundTripIsByteIdentical) {
  auto r = paper_protocol(fixture_run());
  r.dmus = {"2", "7", "9"};
  const auto rep = evaluate(r);
  const auto text = to_json(rep);
  const auto back = report_from_json(text);
  EXPECT_EQ(render_table(back), render_table(rep));
  EXPECT_EQ(render_csv(back), render_csv(rep));
  EXPECT_EQ(to_json(back), text);

  auto rr = fixture_run();
  rr.model = ModelKind::CcRadial;
  rr.c_values = {0.25};
  rr.dmus = {"9"};
  const auto radial = evaluate(rr);
  EXPECT_EQ(render_table(report_from_json(to_json(radial))), render_table(radial));
  EXPECT_THROW(report_from_json("{\"model\": 1}"), ParseError);
}

TEST(Drivers, ExitCodes) {
  TempDir tmp;
  std::ostringstream out, err;
  auto r = paper_protocol(fixture_run());
  r.c_values = {0.0};
  EXPECT_EQ(run_eval(r, out, err), 0);

  auto bad = fixture_run();
  bad.model = ModelKind::Directional;
  EXPECT_EQ(run_eval(bad, out, err), 2);  // no direction
  bad.data_path = "/nonexistent.csv";
  EXPECT_EQ(run_eval(bad, out, err), 2);

  auto slow = paper_protocol(fixture_run());
  slow.c_values = {0.5};
  slow.solver.max_iterations = 1;
  err.str("");
  EXPECT_EQ(run_eval(slow, out, err), 3);
  EXPECT_NE(err.str().find("DMU 'Site 1' at c = 0.5"), std::string::npos) << err.str();

  std::ostringstream json;
  r.format = OutputFormat::Json;
  ASSERT_EQ(run_eval(r, json, err), 0);
  const auto path = tmp.write("r.json", json.str());
  std::ostringstream t1, t2;
  r.format = OutputFormat::Table;
  ASSERT_EQ(run_eval(r, t1, err), 0);
  ASSERT_EQ(run_report(path, OutputFormat::Table, t2, err), 0);
  EXPECT_EQ(t1.str(), t2.str());
  EXPECT_EQ(run_report(tmp.write("junk.json", "[1,"), OutputFormat::Table, t2, err), 2);
}

TEST(Drivers, AuditZeroCovariancePasses) {
  auto r = paper_protocol(fixture_run());
  r.c_values = {0.0};
  r.samples = 200;
  const auto entries = audit(r);
  ASSERT_EQ(entries.size(), 20u);  // two blocks x ten DMUs
  for (const auto& e : entries)
    for (const auto& row : e.report.rows) EXPECT_EQ(row.p_hat, 1.0);
  std::ostringstream out, err;
  EXPECT_EQ(run_audit(r, out, err), 0);
  EXPECT_NE(out.str().find("all rows pass"), std::string::npos);
}

TEST(Drivers, AuditReproducibleAndFailing) {
  TempDir tmp;
  const auto data = tmp.write("ab.csv", "dmu,in:x,out:y\nA,2,2\nB,4,2\n");
  auto r = RunConfig{};
  r.data_path = data;
  r.model = ModelKind::CcDirectional;
  r.d_plus = VectorXd::Ones(1);
  r.c_values = {0.5};
  r.samples = 10;
  r.seed = 3;
  std::ostringstream a, b, err;
  const int ca = run_audit(r, a, err);
  const int cb = run_audit(r, b, err);
  EXPECT_EQ(ca, cb);
  EXPECT_EQ(a.str(), b.str());

  // the mean-data optimum ignores the noise, so its binding row holds
  // only about half the time
  r.model = ModelKind::Directional;
  r.samples = 10000;
  std::ostringstream out;
  EXPECT_EQ(run_audit(r, out, err), 4);
  EXPECT_NE(out.str().find("FAIL"), std::string::npos);

  r.model = ModelKind::CcDirectional;
  r.format = OutputFormat::Json;
  std::ostringstream js;
  EXPECT_EQ(run_audit(r, js, err), 0);
  EXPECT_NE(js.str().find("\"p_hat\""), std::string::npos);
  EXPECT_NE(js.str().find("\"joint\""), std::string::npos);
}
