#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace charblow;

TEST(Spectral, NormalizationAndOrdering) {
  std::mt19937_64 rng(11);
  for (const auto& name : builtin_model_names()) {
    const Spectrum sp(builtin_model(name));
    for (int s = 0; s < 200; ++s) {
      const Vec u = oracle::ball_point(rng, sp.dim(), 2.0 * sp.model().delta * 0.999);
      const SpectralFrame f = sp.frame(u);
      const Mat A = sp.model().a(u);
      for (int i = 0; i < f.dim(); ++i) {
        EXPECT_NEAR(f.l(i).norm(), 1.0, 1e-13);
        EXPECT_LT((A * f.r(i) - f.lambdas[i] * f.r(i)).norm(), 1e-12);
        EXPECT_LT((f.l(i).transpose() * A - f.lambdas[i] * f.l(i).transpose()).norm(), 1e-12);
        if (i > 0) EXPECT_LT(f.lambdas[i - 1], f.lambdas[i]);
      }
      EXPECT_LT((f.L * f.R - Mat::Identity(f.dim(), f.dim())).norm(), 1e-12);
      EXPECT_LT((f.gram - f.L * f.L.transpose()).norm(), 1e-14);
    }
  }
}

TEST(Spectral, OrientationMakesGnlNegative) {
  for (const auto& name : builtin_model_names()) {
    const Spectrum sp(builtin_model(name));
    const int p = sp.model().gnl();
    const double h = 1e-6;
    const double d = oracle::dlambda(sp, sp.model().origin(), p, sp.origin_frame().r(p), h);
    EXPECT_LT(d, 0.0) << name;
    EXPECT_NEAR(d, sp.gnl_value(), 1e-8) << name;
  }
}

TEST(Spectral, EulerHandValues) {
  // a(0) = [[0, 1], [2, 0]]: lambda = -+sqrt(2); l_i = (sqrt 2, -+1)/sqrt 3 up to sign.
  const Spectrum sp(builtin_model("euler_friction"));
  const SpectralFrame& f = sp.origin_frame();
  const double c = std::sqrt(2.0);
  EXPECT_NEAR(f.lambdas[0], -c, 1e-14);
  EXPECT_NEAR(f.lambdas[1], c, 1e-14);
  EXPECT_NEAR(f.L(0, 0), std::sqrt(2.0 / 3.0), 1e-14);
  EXPECT_NEAR(f.L(0, 1), -std::sqrt(1.0 / 3.0), 1e-14);
  // Family 2 flipped so that <D lambda_2, r_2> < 0.
  EXPECT_NEAR(f.L(1, 0), -std::sqrt(2.0 / 3.0), 1e-14);
  EXPECT_NEAR(f.L(1, 1), -std::sqrt(1.0 / 3.0), 1e-14);
  // D lambda_2(0) = (1/sqrt 2, 1), r_2 = -(sqrt 3 / (2 sqrt 2), sqrt 3 / 2).
  EXPECT_NEAR(sp.gnl_value(), -3.0 * std::sqrt(3.0) / 4.0, 1e-8);
}

TEST(Spectral, BurgersFrame) {
  const Spectrum sp(builtin_model("burgers"));
  const SpectralFrame f = sp.frame(detail::vec1(0.3));
  EXPECT_DOUBLE_EQ(f.lambdas[0], 0.3);
  EXPECT_DOUBLE_EQ(f.r(0)[0], -1.0);
  EXPECT_DOUBLE_EQ(sp.gnl_value(), -1.0);
}

TEST(Spectral, FramesVaryContinuously) {
  const Spectrum sp(builtin_model("euler_friction"));
  Vec dir(2);
  dir << 0.6, -0.8;
  SpectralFrame prev = sp.frame(Vec::Zero(2));
  for (int k = 1; k <= 200; ++k) {
    const SpectralFrame f = sp.frame(dir * (0.99 * k / 200.0));
    EXPECT_LT((f.L - prev.L).norm(), 0.05);
    prev = f;
  }
}

TEST(Spectral, DerivativesMatchDifferences) {
  const Spectrum sp(builtin_model("euler_friction"));
  Vec u(2);
  u << 0.1, -0.05;
  const FrameDerivatives d = sp.derivatives(u);
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k) {
      const Vec e = Vec::Unit(2, k);
      EXPECT_NEAR(d.dlambda(i, k), oracle::dlambda(sp, u, i, e, 1e-5), 1e-8);
      EXPECT_LT((d.dl_dir(i, e) - oracle::dl(sp, sp.frame(u), i, e, 1e-5)).norm(), 1e-8);
    }
}

TEST(Spectral, DomainAndHyperbolicityErrors) {
  const Spectrum sp(builtin_model("euler_friction"));
  EXPECT_THROW(sp.frame(Vec::Constant(2, 0.9)), DomainError);
  EXPECT_THROW(sp.frame(Vec::Zero(3)), ConfigError);
  Mat rot(2, 2);
  rot << 0.0, 1.0, -1.0, 0.0;
  EXPECT_THROW(raw_eigensystem(rot), HyperbolicityError);
  EXPECT_THROW(raw_eigensystem(Mat::Identity(2, 2)), HyperbolicityError);
}

TEST(Spectral, EulerGap) {
  // lambda_2 - lambda_1 = 2 sqrt(2 rho), smallest at rho = 1 - delta = 1/2.
  const double gap = Spectrum(builtin_model("euler_friction")).gap();
  EXPECT_GE(gap, 2.0 - 1e-12);
  EXPECT_LT(gap, 2.02);
  EXPECT_TRUE(std::isinf(Spectrum(builtin_model("burgers")).gap()));
}

TEST(Spectral, ConstantSymmetricSystem) {
  // a = [[0, 1], [1, 0]]: lambda = -+1, l_1 = (1, -1)/sqrt 2, r_1 = (1, -1)/sqrt 2.
  const Spectrum sp(oracle::constant_wave(1.0));
  const SpectralFrame& f = sp.origin_frame();
  const double s = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(f.lambdas[0], -1.0, 1e-14);
  EXPECT_NEAR(f.lambdas[1], 1.0, 1e-14);
  EXPECT_NEAR(f.L(0, 0), s, 1e-14);
  EXPECT_NEAR(f.L(0, 1), -s, 1e-14);
  EXPECT_NEAR(f.R(0, 0), s, 1e-14);
  EXPECT_NEAR(f.R(1, 0), -s, 1e-14);
  EXPECT_NEAR(sp.gap(), 2.0, 1e-14);
  const FrameDerivatives d = sp.derivatives(Vec::Zero(2));
  EXPECT_LT(d.dlambda.norm(), 1e-12);
}

TEST(Spectral, BurgersDerivative) {
  const FrameDerivatives d = Spectrum(builtin_model("burgers")).derivatives(detail::vec1(0.1));
  EXPECT_NEAR(d.dlambda(0, 0), 1.0, 1e-10);
}

TEST(Spectral, FiniteDifferenceOrderTwo) {
  // lambda_2 = v + sqrt(2 rho), rho = 1 + u_1.
  const Spectrum sp(builtin_model("euler_friction"));
  Vec u(2);
  u << 0.2, -0.1;
  const double exact = 1.0 / std::sqrt(2.0 * 1.2);
  const double e1 = std::abs(sp.derivatives(u, 0.04).dlambda(1, 0) - exact);
  const double e2 = std::abs(sp.derivatives(u, 0.02).dlambda(1, 0) - exact);
  EXPECT_NEAR(e1 / e2, 4.0, 0.1);
  EXPECT_NEAR(sp.derivatives(u).dlambda(1, 1), 1.0, 1e-9);
}

TEST(Spectral, NoSignFlipsAtSmallDistance) {
  std::mt19937_64 rng(12);
  for (const auto& name : builtin_model_names()) {
    const Spectrum sp(builtin_model(name));
    for (int s = 0; s < 500; ++s) {
      const Vec u = oracle::ball_point(rng, sp.dim(), sp.model().delta);
      const Vec v = u + 1e-6 * oracle::random_vec(rng, sp.dim()) / std::sqrt(double(sp.dim()));
      EXPECT_LT((sp.frame(u).R - sp.frame(v).R).norm(), 1e-4) << name;
    }
  }
}
