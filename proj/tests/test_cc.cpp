#include "sdea/chance_constrained.hpp"
#include "sdea/core.hpp"
#include "sdea/deterministic.hpp"
#include "sdea/errors.hpp"
#include "sdea/fixture.hpp"

#include "oracle.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace sdea;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

VectorXd v1(double a) { return VectorXd::Constant(1, a); }

Dataset two_dmu(const TwoDmuInstance& p) {
  MatrixXd x(1, 2), y(1, 2);
  x << p.x[0], p.x[1];
  y << p.y[0], p.y[1];
  auto d = Dataset::from_means(x, y);
  d.output_cov[0] = expand(cov::ScalarIdentity{p.c}, 2);
  return d;
}

// A = (x 2, y 2), B = (x 4, y 2), evaluating B
TwoDmuInstance ab(double c) {
  TwoDmuInstance p{{2, 4}, {2, 2}};
  p.c = c;
  return p;
}

Dataset noisy_fixture(double c) {
  auto d = table1_fixture();
  for (auto& s : d.output_cov) s = expand(cov::ScalarIdentity{c}, d.num_dmus());
  return d;
}

// c'z + e - ||Az + b||, nonnegative inside the cone
double cone_margin(const SecondOrderCone& k, const VectorXd& z) {
  return k.c.dot(z) + k.e - (k.A * z + k.b).norm();
}

ModelConfig table2_config() { return stochastic_config(VectorXd::Zero(5), VectorXd::Ones(3)); }

// 12 DMUs, 2 inputs, 3 outputs; input 1 has a dense random covariance,
// input 2 none, outputs c^2 I.
struct RandomCase {
  Dataset d;
  ModelConfig cfg;
};

RandomCase random_case(unsigned seed, double c) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0, 1);
  std::normal_distribution<double> g(0, 0.5);
  const int n = 12, m = 2, s = 3;
  MatrixXd x(m, n), y(s, n);
  for (auto& v : x.reshaped()) v = 5 + 45 * u(rng);
  for (auto& v : y.reshaped()) v = 5 + 45 * u(rng);
  RandomCase rc{Dataset::from_means(x, y), {}};
  MatrixXd a(n, n);
  for (auto& v : a.reshaped()) v = g(rng);
  rc.d.input_cov[0] = a * a.transpose();
  for (auto& v : rc.d.output_cov) v = expand(cov::ScalarIdentity{c}, n);
  VectorXd dm(m), dp(s);
  for (auto& v : dm) v = u(rng) < 0.5 ? u(rng) : 0.0;
  for (auto& v : dp) v = 0.1 + 0.9 * u(rng);
  rc.cfg = stochastic_config(dm, dp);
  return rc;
}

}  // namespace

TEST(ZeroCovariance, SameProgramsAsDeterministic) {
  const auto d = table1_fixture();
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  VectorXd dm(5), dp(3);
  for (auto& v : dm) v = u(rng);
  for (auto& v : dp) v = u(rng);
  for (const auto& cfg : {table2_config(), stochastic_config(dm, dp),
                          deterministic_config(VectorXd::Zero(5), VectorXd{{5.0, 4.0, 1.0}})}) {
    for (int o = 0; o < 10; ++o) {
      const auto p1 = build_cc_stage1(d, cfg, o);
      EXPECT_TRUE(p1.cones.empty());
      EXPECT_TRUE(p1.linear == build_directional_stage1(d, cfg, o));
      const auto p2 = build_cc_stage2(d, cfg, o, 0.25);
      EXPECT_TRUE(p2.cones.empty());
      EXPECT_TRUE(p2.linear == build_directional_stage2(d, cfg, o, 0.25));

      const auto cc = solve_cc_directional(d, cfg, o);
      const auto det = solve_directional(d, cfg, o);
      EXPECT_NEAR(cc.beta_star, det.beta_star, 1e-8);
      EXPECT_NEAR(cc.slack_objective, det.slack_objective, 1e-8);
      EXPECT_EQ(cc.status, det.status);
    }
  }
}

TEST(ZeroCovariance, HalfAlphaIsDeterministic) {
  const auto d = noisy_fixture(0.5);
  auto cfg = table2_config();
  cfg.alpha = 0.5;
  for (int o = 0; o < 10; ++o) {
    EXPECT_TRUE(build_cc_stage1(d, cfg, o).cones.empty());
    EXPECT_NEAR(solve_cc_directional(d, cfg, o).beta_star,
                solve_directional(d, cfg, o).beta_star, 1e-8);
  }
}

TEST(Config, AlphaAboveHalfRejected) {
  const auto d = two_dmu(ab(0.5));
  EXPECT_THROW(build_cc_stage1(d, stochastic_config(v1(0), v1(1), 0.6), 1), ConfigError);
  EXPECT_THROW(solve_cc_directional(d, stochastic_config(v1(0), v1(1), 0.9), 1), ConfigError);
  EXPECT_THROW(stochastic_farrell(d, 1, 0.51), ConfigError);
}

TEST(RowForm, OutputConeOnTwoDmus) {
  const double c = 0.5, q = std::abs(probit(0.05));
  const auto d = two_dmu(ab(c));
  const auto p = build_cc_stage1(d, stochastic_config(v1(0), v1(1)), 1);
  ASSERT_EQ(p.cones.size(), 1u);
  ASSERT_EQ(p.linear.rows.size(), 1u);  // the deterministic input row
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0, 2);
  for (int t = 0; t < 50; ++t) {
    const double beta = u(rng), l0 = u(rng), l1 = u(rng);
    const VectorXd z{{beta, l0, l1}};
    // (Y lambda) - (1 + beta) y_B >= q c || lambda - (1 + beta) e_B ||
    const double expect =
        2 * l0 + 2 * l1 - 2 * (1 + beta) - q * c * std::hypot(l0, l1 - (1 + beta));
    EXPECT_NEAR(cone_margin(p.cones[0], z), expect, 1e-12);
  }
  EXPECT_EQ(p.linear.rows[0].coeffs, (VectorXd{{0.0, 2.0, 4.0}}));
  EXPECT_EQ(p.linear.rows[0].relation, Relation::LessEqual);
  EXPECT_DOUBLE_EQ(p.linear.rows[0].rhs, 4.0);
}

TEST(RowForm, InputConeUsesOwnKappa) {
  // input noise on both DMUs, stochastic input direction
  MatrixXd x(1, 2), y(1, 2);
  x << 2, 4;
  y << 2, 2;
  auto d = Dataset::from_means(x, y);
  d.input_cov[0] = MatrixXd{{0.09, 0.03}, {0.03, 0.16}};
  const double q = std::abs(probit(0.1));
  const auto p = build_cc_stage1(d, stochastic_config(v1(0.5), v1(0), 0.1), 1);
  ASSERT_EQ(p.cones.size(), 1u);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0, 1);
  for (int t = 0; t < 50; ++t) {
    const double beta = u(rng), l0 = u(rng), l1 = u(rng);
    const VectorXd lam{{l0, l1 - (1 - 0.5 * beta)}};
    const double sd = std::sqrt(lam.dot(d.input_cov[0] * lam));
    const double expect = 4 - 0.5 * beta * 4 - 2 * l0 - 4 * l1 - q * sd;
    EXPECT_NEAR(cone_margin(p.cones[0], VectorXd{{beta, l0, l1}}), expect, 1e-12);
  }
}

TEST(Witness, SelfReferenceIsFeasible) {
  auto d = noisy_fixture(0.7);
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g(0, 0.3);
  MatrixXd a(10, 10);
  for (auto& v : a.reshaped()) v = g(rng);
  d.input_cov[2] = a * a.transpose();
  for (const auto& cfg : {table2_config(), stochastic_config(VectorXd::Ones(5), VectorXd::Ones(3)),
                          deterministic_config(VectorXd::Ones(5), VectorXd::Ones(3))}) {
    for (int o = 0; o < 10; ++o) {
      const auto p = build_cc_stage1(d, cfg, o);
      VectorXd z = VectorXd::Zero(11);
      z[1 + o] = 1.0;
      for (const auto& k : p.cones) EXPECT_GE(cone_margin(k, z), -1e-12) << k.label;
      for (const auto& r : p.linear.rows) {
        const double v = r.coeffs.dot(z);
        if (r.relation == Relation::LessEqual) EXPECT_LE(v, r.rhs + 1e-12);
        if (r.relation == Relation::GreaterEqual) EXPECT_GE(v, r.rhs - 1e-12);
      }
    }
  }
}

TEST(SingleDmu, ScoresZero) {
  MatrixXd x(1, 1), y(1, 1);
  x << 3;
  y << 5;
  auto d = Dataset::from_means(x, y);
  d.output_cov[0] = MatrixXd::Constant(1, 1, 0.25);
  d.input_cov[0] = MatrixXd::Constant(1, 1, 0.04);
  const auto r = solve_cc_directional(d, stochastic_config(v1(0), v1(1)), 0);
  EXPECT_NEAR(r.beta_star, 0.0, 1e-7);
  EXPECT_NEAR(r.lambda_star[0], 1.0, 1e-6);
  EXPECT_EQ(r.status, Efficiency::Efficient);
  EXPECT_NEAR(stochastic_farrell(d, 0), 0.0, 1e-7);
}

TEST(TwoDmu, MatchesBruteForce) {
  for (double c : {0.1, 0.25, 0.5, 1.0}) {
    for (int o : {0, 1}) {
      auto p = ab(c);
      p.o = o;
      const double ref = oracle::beta_star(p);
      const auto r = solve_cc_directional(two_dmu(p), stochastic_config(v1(0), v1(1)), o);
      EXPECT_NEAR(r.beta_star, ref, 1e-4) << "c " << c << " dmu " << o;
    }
  }
  const auto b = solve_cc_directional(two_dmu(ab(0.5)), stochastic_config(v1(0), v1(1)), 1);
  EXPECT_LT(b.beta_star, 1.0 - 1e-3);
  EXPECT_GT(b.beta_star, 0.0);
}

TEST(TwoDmu, MixedDirectionsMatchBruteForce) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0, 1);
  for (int t = 0; t < 6; ++t) {
    TwoDmuInstance p{{1 + 9 * u(rng), 1 + 9 * u(rng)}, {1 + 9 * u(rng), 1 + 9 * u(rng)}};
    p.c = 0.5 * u(rng) * std::min(p.y[0], p.y[1]);
    p.dm = u(rng);
    p.dp = u(rng);
    p.o = t % 2;
    const auto r = solve_cc_directional(two_dmu(p), stochastic_config(v1(p.dm), v1(p.dp)), p.o);
    EXPECT_NEAR(r.beta_star, oracle::beta_star(p), 1e-4) << "case " << t;
  }
}

TEST(Radial, MonotoneInNoise) {
  double theta = 0.0, phi = INFINITY;
  for (double c : {0.0, 0.25, 0.5}) {
    const auto d = two_dmu(ab(c));
    const auto cfg = stochastic_config(v1(1), v1(1));
    const double t = solve_cc_radial(d, cfg, 1, Orientation::Input).score;
    const double f = solve_cc_radial(d, cfg, 1, Orientation::Output).score;
    EXPECT_GE(t, theta - 1e-7) << c;
    EXPECT_LE(f, phi + 1e-7) << c;
    EXPECT_LE(t, 1.0 + 1e-7);
    EXPECT_GE(f, 1.0 - 1e-7);
    theta = t;
    phi = f;
  }
  EXPECT_NEAR(solve_cc_radial(two_dmu(ab(0)), stochastic_config(v1(1), v1(1)), 1,
                              Orientation::Input)
                  .score,
              0.5, 1e-8);
}

TEST(Radial, MatchesUnitDirections) {
  const auto d = noisy_fixture(0.3);
  const auto cfg = stochastic_config(VectorXd::Ones(5), VectorXd::Ones(3));
  for (int o = 0; o < 10; ++o) {
    const auto out = solve_cc_radial(d, cfg, o, Orientation::Output);
    const auto dir = solve_cc_directional(d, table2_config(), o);
    EXPECT_NEAR(out.score - 1.0, dir.beta_star, 1e-8) << o;
    const auto in = solve_cc_radial(d, cfg, o, Orientation::Input);
    const auto din =
        solve_cc_directional(d, stochastic_config(VectorXd::Ones(5), VectorXd::Zero(3)), o);
    EXPECT_NEAR(1.0 - in.score, din.beta_star, 1e-8) << o;
  }
  const auto two = two_dmu(ab(0.5));
  EXPECT_NEAR(solve_cc_radial(two, stochastic_config(v1(1), v1(1)), 1, Orientation::Output).score -
                  1.0,
              solve_cc_directional(two, stochastic_config(v1(0), v1(1)), 1).beta_star, 1e-8);
}

TEST(StochasticFarrell, Values) {
  EXPECT_NEAR(stochastic_farrell(two_dmu(ab(0)), 1), 1.0 / 3.0, 1e-8);
  const double b = stochastic_farrell(two_dmu(ab(0.5)), 1);
  EXPECT_GT(b, 0.0);
  EXPECT_LT(b, 1.0 / 3.0);
  EXPECT_NEAR(stochastic_farrell(two_dmu(ab(0.5)), 0), 0.0, 1e-7);
  const auto d = table1_fixture();
  for (int o = 0; o < 10; ++o) EXPECT_NEAR(stochastic_farrell(d, o), farrell_measure(d, o), 1e-8);
}

TEST(Fixture, MonotoneInNoise) {
  std::vector<double> prev(10, INFINITY);
  for (double c : {0.0, 0.05, 0.1, 0.25, 0.5}) {
    const auto d = noisy_fixture(c);
    for (int o = 0; o < 10; ++o) {
      const double b = solve_cc_directional(d, table2_config(), o).beta_star;
      EXPECT_LE(b, prev[o] + 1e-7) << "c " << c << " dmu " << o;
      prev[o] = b;
    }
  }
}

TEST(Fixture, NoisyNotAboveDeterministic) {
  const auto det = table1_fixture();
  for (double c : {0.05, 0.25}) {
    const auto d = noisy_fixture(c);
    for (const auto& cfg :
         {table2_config(), stochastic_config(VectorXd::Zero(5), VectorXd{{0.1, 0.05, 0.01}})}) {
      for (int o = 0; o < 10; ++o) {
        const auto s = solve_cc_directional(d, cfg, o);
        const auto a = solve_directional(det, associate(cfg, det, o), o);
        EXPECT_LE(s.beta_star, a.beta_star + 1e-7) << "c " << c << " dmu " << o;
      }
    }
  }
}

TEST(RandomData, AllDmusSolveWithEqualityResiduals) {
  const double q = std::abs(probit(0.05));
  for (unsigned seed : {1u, 2u, 3u}) {
    for (double c : {0.5, 2.0, 5.0}) {
      const auto rc = random_case(seed, c);
      const auto& d = rc.d;
      for (int o = 0; o < d.num_dmus(); ++o) {
        for (const auto& cfg : {rc.cfg, associate(rc.cfg, d, o)}) {
          EvaluationResult r;
          ASSERT_NO_THROW(r = solve_cc_directional(d, cfg, o)) << seed << " " << c << " " << o;
          EXPECT_GE(r.beta_star, 0.0);
          const auto [gm, gp] = mean_direction(cfg.direction, d, o);
          for (int i = 0; i < d.num_inputs(); ++i) {
            const double res = d.inputs(i, o) - r.beta_star * gm[i] -
                               d.inputs.row(i).dot(r.lambda_star) - r.s_minus_star[i] -
                               q * sigma_minus(i, r.beta_star, r.lambda_star, cfg, d, o);
            EXPECT_LT(std::abs(res), 1e-6) << seed << " " << c << " " << o << " in " << i;
          }
          for (int k = 0; k < d.num_outputs(); ++k) {
            const double res = d.outputs.row(k).dot(r.lambda_star) - d.outputs(k, o) -
                               r.beta_star * gp[k] - r.s_plus_star[k] -
                               q * sigma_plus(k, r.beta_star, r.lambda_star, cfg, d, o);
            EXPECT_LT(std::abs(res), 1e-6) << seed << " " << c << " " << o << " out " << k;
          }
        }
      }
    }
  }
}

TEST(RandomData, EfficiencyIndependentOfDirection) {
  const auto rc = random_case(9, 0.5);
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  for (int o = 0; o < rc.d.num_dmus(); ++o) {
    const bool ref = solve_cc_directional(rc.d, rc.cfg, o).status == Efficiency::Efficient;
    for (int t = 0; t < 5; ++t) {
      VectorXd dm(2), dp(3);
      for (auto& v : dm) v = u(rng);
      for (auto& v : dp) v = u(rng);
      const auto r = solve_cc_directional(rc.d, stochastic_config(dm, dp), o);
      EXPECT_EQ(r.status == Efficiency::Efficient, ref) << o;
    }
  }
}
