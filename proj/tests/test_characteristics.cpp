#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace charblow;

TEST(Trace, ConstantSpeedIsExact) {
  const Spectrum sp(oracle::constant_speed(0.7));
  GridConfig g;
  g.n_cells = 400;
  g.frame_speed = 0.0;
  const Trajectory tr = simulate(sp, make_initial_data(sp, 0.1), g, 1.0, 0.0);
  const CharTrace ct = trace(sp, tr, 0, 0.0, -0.2, 1.0);
  EXPECT_FALSE(ct.truncated);
  EXPECT_NEAR(ct.x.back(), 0.5, 1e-12);
  EXPECT_NEAR(trace_position(ct, 0.5), 0.15, 1e-12);
}

TEST(Trace, RoundTrip) {
  const Spectrum sp(builtin_model("euler_friction"));
  const InitialDataSpec d = make_initial_data(sp, 0.05, 0.1);
  GridConfig g;
  g.n_cells = 1024;
  const Trajectory tr = simulate(sp, d, g, 2.0, 0.005);
  for (int fam = 0; fam < 2; ++fam) {
    const CharTrace fwd = trace(sp, tr, fam, 0.0, 0.1, tr.t_stop);
    ASSERT_FALSE(fwd.truncated);
    const CharTrace back = trace(sp, tr, fam, tr.t_stop, fwd.x.back(), 0.0);
    EXPECT_NEAR(back.x.back(), 0.1, 1e-6);
  }
}

TEST(Trace, ArgumentsChecked) {
  const Spectrum sp(builtin_model("burgers"));
  GridConfig g;
  g.n_cells = 128;
  const Trajectory tr = simulate(sp, make_initial_data(sp, 0.05), g, 1.0, 0.0);
  EXPECT_THROW(trace(sp, tr, 1, 0.0, 0.0, 1.0), ConfigError);
  EXPECT_THROW(trace(sp, tr, 0, 0.0, 0.0, 5.0), ConfigError);
  EXPECT_THROW(trace(sp, tr, 0, 0.0, 50.0, 1.0), ConfigError);
}

TEST(Decompose, SimpleWaveAtTimeZero) {
  const Spectrum sp(builtin_model("euler_friction"));
  const InitialDataSpec d = make_initial_data(sp, 0.1);
  GridConfig g;
  g.n_cells = 2048;
  const Trajectory tr = simulate(sp, d, g, 0.1, 0.0);
  const WaveField wf = decompose(sp, tr);
  const auto& w0 = wf.w.front();
  double w1 = 0.0, w2 = 0.0;
  for (int j = 0; j < tr.n_cells(); ++j) {
    w1 = std::max(w1, std::abs(w0[static_cast<std::size_t>(j * 2)]));
    w2 = std::max(w2, std::abs(w0[static_cast<std::size_t>(j * 2 + 1)]));
  }
  EXPECT_NEAR(w2, 0.1 * oracle::kMaxDalpha, 1e-3);
  EXPECT_LT(w1, 1e-4 * w2);
}

TEST(Lemma3, BoundsHoldOnEuler) {
  const Spectrum sp(builtin_model("euler_friction"));
  const ConstantChain ch = constant_chain(model_bounds(sp, 1024), standard_bump());
  const double eps = 0.05, kappa = 0.1;
  const InitialDataSpec d = make_initial_data(sp, eps, kappa);
  GridConfig g;
  g.target_dx = 0.01;
  const Trajectory tr = run_with_probes(sp, d, g, 0.5 * simple_wave_time(ch, eps), eps * kappa);
  const Lemma3Report r =
      lemma3_quantities(sp, tr, decompose(sp, tr), Lemma3Bounds{ch.c_J, ch.c_M, ch.c_S, ch.c_V, eps});
  EXPECT_TRUE(r.edges_from_probes);
  EXPECT_TRUE(r.J_ok && r.M_ok && r.S_ok && r.V_ok);
  // J starts at the total variation of the p-wave: eps * 2.
  EXPECT_NEAR(r.J.front(), 2.0 * eps, 2e-3);
}

TEST(Trace, BurgersSpeedIsConstant) {
  const Spectrum sp(builtin_model("burgers"));
  const double T = oracle::burgers_lifespan(0.05);
  GridConfig g;
  g.n_cells = 8192;
  const Trajectory tr = simulate(sp, make_initial_data(sp, 0.05), g, 0.8 * T, 0.0);
  for (double x0 : {-0.3, 0.0, 0.2}) {
    const CharTrace ct = trace(sp, tr, 0, 0.0, x0, tr.t_stop);
    double drift = 0.0;
    for (double l : ct.lambda) drift = std::max(drift, std::abs(l - ct.lambda.front()));
    EXPECT_LT(drift, 1e-4);
  }
}

TEST(Decompose, ReconstructionIsExact) {
  const Spectrum sp(builtin_model("relax_2x2"));
  GridConfig g;
  g.n_cells = 512;
  const Trajectory tr = simulate(sp, make_initial_data(sp, 0.1, 0.5), g, 0.5, 0.05);
  const WaveField wf = decompose(sp, tr);
  for (std::size_t k = 0; k < tr.snapshots.size(); k += 20)
    EXPECT_LT(reconstruction_residual(sp, tr, wf, k), 1e-10);
}

TEST(Decompose, DecoupledFamilyStaysZero) {
  const Spectrum sp(oracle::constant_wave(1.0));
  GridConfig g;
  g.n_cells = 800;
  const Trajectory tr = simulate(sp, make_initial_data(sp, 0.1), g, 0.5, 0.0);
  const WaveField wf = decompose(sp, tr);
  double w1 = 0.0;
  for (const auto& w : wf.w)
    for (int j = 0; j < tr.n_cells(); ++j) w1 = std::max(w1, std::abs(w[static_cast<std::size_t>(2 * j)]));
  EXPECT_LT(w1, 1e-10);
  const CharTrace ct = trace(sp, tr, 1, 0.0, 0.0, tr.t_stop);
  EXPECT_LT(transport_residual(sp, tr, wf, ct, 0.0).max(), 1e-8);
}

TEST(Lemma3, SeriesAreRunningSuprema) {
  const Spectrum sp(builtin_model("burgers"));
  const double eps = 0.05;
  GridConfig g;
  g.n_cells = 4096;
  const Trajectory tr =
      run_with_probes(sp, make_initial_data(sp, eps), g, 0.5 * oracle::burgers_lifespan(eps), 0.0);
  const Lemma3Report r = lemma3_quantities(sp, tr, decompose(sp, tr));
  for (const auto* v : {&r.J, &r.M, &r.S, &r.V_tilde, &r.W_p_out, &r.V})
    for (std::size_t k = 1; k < v->size(); ++k) EXPECT_GE((*v)[k], (*v)[k - 1]);
  EXPECT_NEAR(r.S.front(), 1.0, 1e-12);
  EXPECT_EQ(r.V.front(), 0.0);
  EXPECT_NEAR(r.J.front(), 2.0 * eps, 1e-6);
  EXPECT_EQ(Lemma3Report::last(r.V_tilde), 0.0);
  EXPECT_LT(Lemma3Report::last(r.W_p_out), 1e-6);
}
