#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace charblow;

TEST(Model, RegistryNamesResolve) {
  for (const auto& name : builtin_model_names()) {
    const SystemModel m = builtin_model(name);
    EXPECT_EQ(m.name, name);
    EXPECT_GE(m.p, 1);
    EXPECT_LE(m.p, m.dim);
    EXPECT_GT(m.delta, 0.0);
  }
  EXPECT_THROW(builtin_model("nope"), ConfigError);
}

TEST(Model, ParametersAreChecked) {
  EXPECT_THROW(builtin_model("burgers", {{"beta", 1.0}}), ConfigError);
  EXPECT_THROW(builtin_model("euler_friction", {{"rho_bar", -1.0}}), ConfigError);
  EXPECT_THROW(builtin_model("relax_2x2", {{"tau", 0.0}}), ConfigError);
  const SystemModel m = builtin_model("euler_friction", {{"gamma", 1.4}});
  EXPECT_DOUBLE_EQ(m.params.at("gamma"), 1.4);
  EXPECT_DOUBLE_EQ(m.params.at("rho_bar"), 1.0);
}

TEST(Model, EulerShiftMatchesPhysicalVariables) {
  const SystemModel m = builtin_model("euler_friction");
  std::mt19937_64 rng(3);
  for (int s = 0; s < 50; ++s) {
    const Vec u = oracle::ball_point(rng, 2, m.delta);
    EXPECT_LT((m.a(u) - m.physical_a(u + m.background)).norm(), 1e-14);
    EXPECT_LT((m.g(u) - m.physical_g(u + m.background)).norm(), 1e-14);
    // p = rho^2: a = [[v, rho], [2, v]]
    Mat A(2, 2);
    A << u[1], 1.0 + u[0], 2.0, u[1];
    EXPECT_LT((m.a(u) - A).norm(), 1e-14);
  }
}

TEST(Model, AnalyticDerivativesMatchDifferences) {
  std::mt19937_64 rng(5);
  for (const auto& name : builtin_model_names()) {
    const SystemModel m = builtin_model(name);
    for (int s = 0; s < 20; ++s) {
      const Vec u = oracle::ball_point(rng, m.dim, m.delta);
      const Vec d = oracle::random_vec(rng, m.dim);
      const double h = 1e-6;
      const Mat fd = (m.a(u + h * d) - m.a(u - h * d)) / (2 * h);
      EXPECT_LT((m.a_derivative(u, d) - fd).norm(), 1e-8) << name;
      EXPECT_LT((m.source_jacobian(u) - oracle::Dg(m, u, h)).norm(), 1e-8) << name;
      if (m.speeds) {
        Eigen::EigenSolver<Mat> es(m.a(u), false);
        std::vector<double> ev;
        for (int i = 0; i < m.dim; ++i) ev.push_back(es.eigenvalues()[i].real());
        std::sort(ev.begin(), ev.end());
        for (int i = 0; i < m.dim; ++i) EXPECT_NEAR(m.speeds(u)[i], ev[i], 1e-12) << name;
      }
    }
  }
}

TEST(Model, SourceVanishesAtOriginExceptDiagnostic) {
  for (const auto& name : builtin_model_names()) {
    const SystemModel m = builtin_model(name);
    const double g0 = m.g(m.origin()).norm();
    if (name == "burgers_offset") {
      EXPECT_GT(g0, 0.0);
    } else {
      EXPECT_EQ(g0, 0.0) << name;
    }
  }
}

TEST(Model, DeltaCanOnlyShrink) {
  const SystemModel m = builtin_model("euler_friction");
  EXPECT_DOUBLE_EQ(with_delta(m, 0.1).delta, 0.1);
  EXPECT_THROW(with_delta(m, 0.9), ConfigError);
  EXPECT_THROW(with_delta(m, 0.0), ConfigError);
}

TEST(Assumptions, GateRejectsOffsetModel) {
  for (const auto& name : builtin_model_names()) {
    const AssumptionReport r = verify_assumptions(builtin_model(name));
    EXPECT_EQ(r.all_ok(), name != "burgers_offset") << name;
  }
  const AssumptionReport off = verify_assumptions(builtin_model("burgers_offset"));
  EXPECT_TRUE(off.a1_ok);
  EXPECT_TRUE(off.a2_ok);
  EXPECT_FALSE(off.a3_ok);
}

TEST(Assumptions, LinearModelIsNotGenuinelyNonlinear) {
  const AssumptionReport r = verify_assumptions(oracle::constant_wave(1.0));
  EXPECT_TRUE(r.a1_ok);
  EXPECT_FALSE(r.a2_ok);
}
