#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace charblow;

namespace {

const std::vector<std::string> kModels{"burgers", "burgers_damped", "euler_friction", "relax_2x2"};

}  // namespace

TEST(Coefficients, GammaMatchesWaveEquation) {
  std::mt19937_64 rng(21);
  for (const auto& name : kModels) {
    const Spectrum sp(builtin_model(name));
    const double h = 1e-5 * sp.model().delta;
    for (int s = 0; s < 100; ++s) {
      const Vec u = oracle::ball_point(rng, sp.dim(), sp.model().delta);
      const CoefficientSet cs = coefficients_at(sp, u);
      for (int t = 0; t < 5; ++t) {
        const Vec w = oracle::random_vec(rng, sp.dim());
        for (int i = 0; i < sp.dim(); ++i) {
          EXPECT_NEAR(cs.gamma.quadratic_form(i, w), oracle::wave_quadratic(sp, cs.frame, i, w, h),
                      1e-8)
              << name;
          EXPECT_NEAR(cs.G.row(i).dot(w), oracle::wave_linear(sp, cs.frame, i, w, h), 1e-8) << name;
        }
      }
    }
  }
}

TEST(Coefficients, CTensorMatchesDifferences) {
  std::mt19937_64 rng(22);
  const Spectrum sp(builtin_model("euler_friction"));
  for (int s = 0; s < 50; ++s) {
    const Vec u = oracle::ball_point(rng, 2, sp.model().delta);
    const CoefficientSet cs = coefficients_at(sp, u);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k)
          EXPECT_NEAR(cs.c(i, j, k), oracle::c(sp.model(), cs.frame, i, j, k, 1e-6), 1e-8);
  }
}

TEST(Coefficients, HandValues) {
  const CoefficientSet b = coefficients_at(Spectrum(builtin_model("burgers")), detail::vec1(0.2));
  EXPECT_NEAR(b.gamma(0, 0, 0), 1.0, 1e-12);
  EXPECT_NEAR(b.Gamma(0, 0, 0), 0.0, 1e-9);

  const Spectrum e(builtin_model("euler_friction"));
  const CoefficientSet c0 = coefficients_at(e, Vec::Zero(2));
  EXPECT_NEAR(c0.gamma(1, 1, 1), 3.0 * std::sqrt(3.0) / 4.0, 1e-8);
  EXPECT_NEAR(c0.gamma(1, 1, 1), -c0.c(1, 1, 1), 1e-14);
  // g(0) = 0, so G(0) = L Dg R; every entry is -beta/2 * (1/sqrt 3)(sqrt 3 / 2).
  EXPECT_LT((c0.G - c0.frame.L * e.model().source_jacobian(Vec::Zero(2)) * c0.frame.R).norm(), 1e-12);
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k) EXPECT_NEAR(c0.G(i, k), -0.25, 1e-12);

  const CoefficientSet d = coefficients_at(Spectrum(builtin_model("burgers_damped", {{"beta", 0.3}})),
                                           detail::vec1(0.1));
  EXPECT_NEAR(d.G(0, 0), -0.3, 1e-12);
}

TEST(Coefficients, StructuralIdentities) {
  for (const auto& name : kModels) {
    const InvariantReport r = check_invariants(Spectrum(builtin_model(name)), 300);
    EXPECT_EQ(r.gamma_symmetry, 0.0) << name;
    EXPECT_LT(r.gamma_relation, 1e-7) << name;
    EXPECT_LT(r.Gamma_relation, 1e-7) << name;
  }
}

TEST(Coefficients, GammaIdentityHolds) {
  std::mt19937_64 rng(23);
  const Spectrum sp(builtin_model("relax_2x2"));
  for (int s = 0; s < 50; ++s) {
    const Vec u = oracle::ball_point(rng, 2, sp.model().delta);
    const CoefficientSet cs = coefficients_at(sp, u);
    const Vec w = oracle::random_vec(rng, 2);
    for (int i = 0; i < 2; ++i) {
      double lhs = cs.gamma.quadratic_form(i, w);
      for (int k = 0; k < 2; ++k)
        lhs += w[i] * w[k] * oracle::dlambda(sp, u, i, cs.frame.r(k), 1e-5);
      EXPECT_NEAR(lhs, cs.Gamma.quadratic_form(i, w), 1e-9);
    }
  }
}

TEST(Coefficients, BurgersBounds) {
  const ModelBounds b = model_bounds(Spectrum(builtin_model("burgers")), 256);
  EXPECT_EQ(b.G_bar, 0.0);
  EXPECT_TRUE(std::isinf(b.c_lambda));
  EXPECT_NEAR(b.gamma_bar, 1.0, 1e-12);
  EXPECT_NEAR(b.r_bar, 1.0, 1e-12);
  EXPECT_NEAR(b.c_bar, 1.0, 1e-12);
  EXPECT_NEAR(b.gamma_ppp_0, 1.0, 1e-12);
}

TEST(Coefficients, EulerBoundsAreConsistent) {
  const Spectrum sp(builtin_model("euler_friction"));
  const ModelBounds b = model_bounds(sp, 1024);
  EXPECT_GE(b.G_bar, 0.5 - 1e-12);
  EXPECT_NEAR(b.lambda1_0, -std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(b.lambdaN_0, std::sqrt(2.0), 1e-12);
  EXPECT_GE(b.gamma_bar, b.gamma_ppp_0);
  // Shrinking the ball cannot increase a supremum.
  const ModelBounds s = model_bounds(Spectrum(with_delta(builtin_model("euler_friction"), 0.25)), 1024);
  EXPECT_LE(s.gamma_bar, b.gamma_bar + 1e-12);
  EXPECT_LE(s.Gamma_bar, b.Gamma_bar + 1e-12);
  EXPECT_GE(s.c_lambda, b.c_lambda - 1e-12);
}

TEST(Coefficients, BurgersAtOrigin) {
  const CoefficientSet b = coefficients_at(Spectrum(builtin_model("burgers")), Vec::Zero(1));
  EXPECT_NEAR(b.c(0, 0, 0), -1.0, 1e-14);
  EXPECT_NEAR(b.gamma(0, 0, 0), 1.0, 1e-14);
  EXPECT_NEAR(b.Gamma(0, 0, 0), 0.0, 1e-9);
  EXPECT_EQ(b.G(0, 0), 0.0);
}

TEST(Coefficients, ConstantCoefficientsVanish) {
  const Spectrum sp(oracle::constant_wave(1.3));
  Vec u(2);
  u << 0.1, 0.2;
  const CoefficientSet cs = coefficients_at(sp, u);
  EXPECT_EQ(cs.c.row_abs_sum_max(), 0.0);
  EXPECT_LT(cs.gamma.row_abs_sum_max(), 1e-12);
  EXPECT_LT(cs.Gamma.row_abs_sum_max(), 1e-9);
  EXPECT_EQ(cs.G.norm(), 0.0);
}

TEST(Coefficients, BoundsStableUnderSampleDoubling) {
  for (const auto& name : kModels) {
    const Spectrum sp(builtin_model(name));
    const ModelBounds a = model_bounds(sp, 4096);
    const ModelBounds b = model_bounds(sp, 8192);
    auto close = [](double x, double y) { return std::abs(x - y) <= 0.01 * std::max(std::abs(x), 1e-300); };
    EXPECT_TRUE(close(a.gamma_bar, b.gamma_bar)) << name;
    EXPECT_TRUE(close(a.Gamma_bar, b.Gamma_bar) || a.Gamma_bar < 1e-8) << name;
    EXPECT_TRUE(close(a.G_bar, b.G_bar) || a.G_bar == 0.0) << name;
    EXPECT_TRUE(close(a.r_bar, b.r_bar)) << name;
    EXPECT_TRUE(close(a.c_bar, b.c_bar)) << name;
  }
}
