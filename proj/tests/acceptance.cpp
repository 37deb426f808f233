// Acceptance checks AC1-AC8. One PASS/FAIL line per criterion; exit status 1
// when any criterion fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "oracles.hpp"

using namespace charblow;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(const char* id, bool ok, const std::string& detail) {
  std::printf("%s %s %s\n", id, ok ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string str(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// AC1 ---------------------------------------------------------------------

// Source-form identity, right-hand side, from finite differences of a and g.
double G_identity_rhs(const SystemModel& m, const SpectralFrame& f, int i, const Vec& w) {
  const int n = f.dim();
  const double h = 1e-6 * m.delta;
  const Mat Dg = oracle::Dg(m, f.u, h);
  const Vec g = m.g(f.u);
  double s = 0.0;
  for (int k = 0; k < n; ++k) s += f.l(i).dot(Dg * f.r(k)) * w[k];
  for (int j = 0; j < n; ++j) {
    if (j == i) continue;
    for (int k = 0; k < n; ++k) {
      const double lkg = f.l(k).dot(g);
      s += oracle::c(m, f, i, j, k, h) * lkg * (f.gram(j, i) * w[i] - w[j]) /
           (f.lambdas[j] - f.lambdas[i]);
    }
  }
  return s;
}

void ac1() {
  std::mt19937_64 rng(20261019);
  double sym = 0.0, rel = 0.0, Grel = 0.0, quad = 0.0, src = 0.0;
  for (const auto& name : builtin_model_names()) {
    const SystemModel m = builtin_model(name);
    const Spectrum sp(m);
    const int n = m.dim;
    for (int s = 0; s < 1000; ++s) {
      const Vec u = oracle::ball_point(rng, n, m.delta);
      const CoefficientSet cs = coefficients_at(sp, u);
      const double h = 1e-5 * m.delta;
      Mat dlr(n, n);
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) dlr(i, k) = oracle::dlambda(sp, u, i, cs.frame.r(k), h);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          for (int k = 0; k < n; ++k)
            sym = std::max(sym, std::abs(cs.gamma(i, j, k) - cs.gamma(i, k, j)));
          rel = std::max(rel, std::abs(cs.gamma(i, j, j) + (i == j ? dlr(i, i) : 0.0)));
          Grel = std::max(Grel, std::abs(cs.Gamma(i, j, j)));
        }
      for (int t = 0; t < 100; ++t) {
        const Vec w = oracle::random_vec(rng, n);
        for (int i = 0; i < n; ++i) {
          double lhs = cs.gamma.quadratic_form(i, w);
          for (int k = 0; k < n; ++k) lhs += w[i] * w[k] * cs.dlambda_r(i, k);
          quad = std::max(quad, std::abs(lhs - cs.Gamma.quadratic_form(i, w)));
          src = std::max(src, std::abs(cs.G.row(i).dot(w) - G_identity_rhs(m, cs.frame, i, w)));
        }
      }
    }
  }
  const bool ok = sym == 0.0 && rel < 1e-7 && Grel < 1e-7 && quad < 1e-9 && src < 1e-9;
  report("AC1", ok,
         "gamma_sym=" + str(sym) + " gamma_ijj=" + str(rel) + " Gamma_ijj=" + str(Grel) +
             " quad_form=" + str(quad) + " source_form=" + str(src));
}

// AC2 ---------------------------------------------------------------------

BlowupEstimate estimate(const Spectrum& sp, double eps, double t_end, double source_scale) {
  const InitialDataSpec d = make_initial_data(sp, eps);
  GridConfig g1, g2;
  g1.n_cells = 4096;
  g2.n_cells = 8192;
  const BlowupOptions opt;
  const auto ladder = estimation_ladder(sp, d, {g1, g2}, t_end, opt);
  return estimate_blowup(sp, d, ladder, t_end, source_scale, opt);
}

void ac2() {
  const double eps = 0.05;
  const double exact = oracle::burgers_lifespan(eps);
  auto t0 = Clock::now();
  const BlowupEstimate b = estimate(Spectrum(builtin_model("burgers")), eps, 1.5 * exact, 0.0);
  const double tb = seconds_since(t0);
  const double eb = std::abs(b.t_star - exact) / exact;

  const double beta = 0.5 * eps * oracle::kMaxDalpha;
  const double exact_d = std::log(2.0) / beta;
  t0 = Clock::now();
  const BlowupEstimate d =
      estimate(Spectrum(builtin_model("burgers_damped", {{"beta", beta}})), eps, 1.5 * exact_d, 1.0);
  const double td = seconds_since(t0);
  const double ed = std::abs(d.t_star - exact_d) / exact_d;

  const bool ok = b.blowup && d.blowup && eb < 0.02 && ed < 0.03 && tb < 120.0 && td < 120.0;
  report("AC2", ok,
         "burgers t*=" + str(b.t_star) + " exact=" + str(exact) + " rel=" + str(eb) + " (" + str(tb) +
             " s); damped t*=" + str(d.t_star) + " exact=" + str(exact_d) + " rel=" + str(ed) + " (" +
             str(td) + " s)");
}

// AC3 / AC4 / AC5 / AC6 share the Euler scan ------------------------------

struct EulerScan {
  ConstantChain chain;
  ScanSummary summary;
  double seconds = 0.0;
};

EulerScan euler_scan() {
  const Spectrum sp(builtin_model("euler_friction"));
  EulerScan out{constant_chain(model_bounds(sp), standard_bump()), {}, 0.0};
  ScanOptions o;
  GridConfig g1, g2;
  g1.target_dx = 0.01;
  g2.target_dx = 0.005;
  o.ladder = {g1, g2};
  const auto t0 = Clock::now();
  out.summary = scaling_scan(sp, out.chain, {0.0125, 0.025, 0.05, 0.1}, {0.1}, o);
  out.seconds = seconds_since(t0);
  return out;
}

void ac3(const EulerScan& s) {
  const double slope = s.summary.slope_t_star.at(0.1);
  bool below = true;
  std::string rows;
  for (const auto& r : s.summary.rows) {
    below = below && r.estimate.blowup && r.t_star < r.T_eps;
    rows += " eps=" + str(r.epsilon) + ":t*=" + str(r.t_star) + "/T_eps=" + str(r.T_eps);
  }
  const bool ok = std::abs(slope + 1.0) <= 0.1 && below && s.seconds < 900.0;
  report("AC3", ok, "slope=" + str(slope) + rows + " (" + str(s.seconds) + " s)");
}

void ac4(const EulerScan& s) {
  const double J = s.summary.slope_J.at(0.1);
  const double M = s.summary.slope_M.at(0.1);
  const double V = s.summary.slope_V.at(0.1);
  const bool ok = std::abs(J - 1.0) <= 0.1 && std::abs(M - 1.0) <= 0.1 && std::abs(V - 2.0) <= 0.3;
  report("AC4", ok, "J=" + str(J) + " M=" + str(M) + " V=" + str(V));
}

void ac5(const EulerScan& s) {
  const ConstantChain& ch = s.chain;
  double worst = 0.0;
  int finite = 0;
  for (int a = 0; a < 10; ++a)
    for (int b = 0; b < 10; ++b) {
      const double eps = 0.01 + 0.01 * a;
      const double kappa = 0.1 * b;
      const RiccatiParams p = riccati_params(ch, eps, kappa);
      const double closed = riccati_closed_form(p);
      const double horizon = std::isfinite(closed) ? 2.0 * closed : 1e3 / (p.a_coef * p.y0);
      const double numeric = riccati_numeric(p, horizon);
      if (std::isfinite(closed) != std::isfinite(numeric)) {
        worst = kInf;
        continue;
      }
      if (std::isfinite(closed)) {
        ++finite;
        worst = std::max(worst, std::abs(closed - numeric) / closed);
      }
    }
  bool comparison = true;
  for (const auto& r : s.summary.rows) comparison = comparison && r.comparison_ok;
  bool ordered = true;
  for (int a = 1; a <= 10; ++a)
    for (int b = 1; b <= 10; ++b) {
      const double eps = ch.nu * a / 10.0, kappa = ch.nu * b / 10.0;
      ordered = ordered && riccati_lifespan(riccati_params(ch, eps, kappa)).t_max < ch.T_eps(eps);
    }
  const bool ok = worst < 1e-6 && comparison && ordered;
  report("AC5", ok,
         "max_rel_diff=" + str(worst) + " (" + std::to_string(finite) +
             " finite) W>=y=" + (comparison ? "yes" : "no") + " T_max<T_eps=" + (ordered ? "yes" : "no") +
             " nu=" + str(ch.nu));
}

void ac6(const EulerScan& s) {
  int violations = 0;
  bool errors = false;
  for (const auto& r : s.summary.rows) {
    violations += r.cone_violations;
    errors = errors || !r.error.empty();
  }
  report("AC6", violations == 0 && !errors, "cone_violations=" + std::to_string(violations));
}

// AC7 ---------------------------------------------------------------------

double transport_error(const Spectrum& sp, const InitialDataSpec& d, int cells) {
  GridConfig g;
  g.n_cells = cells;
  g.x_min = -1.0;
  g.x_max = 2.0;
  g.frame_speed = 0.0;
  const Trajectory tr = simulate(sp, d, g, 1.0, 0.0);
  const Snapshot& s = tr.snapshots.back();
  double err = 0.0;
  for (int j = 0; j < tr.n_cells(); ++j)
    err = std::max(err, std::abs(tr.state(s, j)[0] - d.at(tr.x_at(j, s.t) - s.t)[0]));
  return err;
}

void ac7() {
  const Spectrum sp(oracle::constant_speed(1.0));
  const InitialDataSpec d = make_initial_data(sp, 0.1);
  std::vector<double> err;
  for (int cells : {1200, 2400, 4800, 9600}) err.push_back(transport_error(sp, d, cells));
  bool orders_ok = true;
  std::string orders;
  for (std::size_t k = 0; k + 1 < err.size(); ++k) {
    const double o = std::log2(err[k] / err[k + 1]);
    orders_ok = orders_ok && o >= 3.5 && o <= 4.5;
    orders += " " + str(o);
  }

  const Spectrum es(builtin_model("euler_friction"));
  GridConfig g;
  g.n_cells = 1024;
  const Trajectory tr = simulate(es, make_initial_data(es, 0.05, 0.1), g, 2.0, 0.005);
  double trip = 0.0;
  for (int fam = 0; fam < 2; ++fam)
    for (double x0 : {-0.3, 0.0, 0.2}) {
      const CharTrace fwd = trace(es, tr, fam, 0.0, x0, tr.t_stop);
      const CharTrace back = trace(es, tr, fam, tr.t_stop, fwd.x.back(), 0.0);
      trip = std::max(trip, (fwd.truncated || back.truncated) ? kInf : std::abs(back.x.back() - x0));
    }
  report("AC7", orders_ok && trip < 1e-6, "orders=" + orders + " trace_round_trip=" + str(trip));
}

// AC8 ---------------------------------------------------------------------

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

bool run_cli(const std::string& args) {
  const std::string cmd = std::string(CHARBLOW_BIN) + " " + args + " >/dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) && WEXITSTATUS(rc) == 0;
}

void ac8() {
  const auto dir = std::filesystem::temp_directory_path() / ("charblow_ac8_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  const auto csv = dir / "scan.csv";
  const std::string args = "lifespan --model euler_friction --eps 0.05,0.1 --kappa 0.1 --dx 0.02,0.01 "
                           "--out " + csv.string();
  bool ran = run_cli("--jobs 1 " + args);
  const std::string csv1 = slurp(csv);
  json j1 = json::parse(slurp(with_extension(csv.string(), ".json")), nullptr, false);
  ran = run_cli("--jobs 2 " + args) && ran;
  const std::string csv2 = slurp(csv);
  json j2 = json::parse(slurp(with_extension(csv.string(), ".json")), nullptr, false);
  bool json_same = j1.is_object() && j2.is_object();
  if (json_same) {
    j1.erase("metadata");
    j2.erase("metadata");
    json_same = j1.dump() == j2.dump();
  }
  std::filesystem::remove_all(dir);
  const bool ok = ran && !csv1.empty() && csv1 == csv2 && json_same;
  report("AC8", ok,
         std::string("csv_identical=") + (csv1 == csv2 ? "yes" : "no") + " json_identical=" +
             (json_same ? "yes" : "no") + " bytes=" + std::to_string(csv1.size()));
}

}  // namespace

int main() {
  ac1();
  ac2();
  const EulerScan scan = euler_scan();
  ac3(scan);
  ac4(scan);
  ac5(scan);
  ac6(scan);
  ac7();
  ac8();
  std::printf("%d of 8 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
