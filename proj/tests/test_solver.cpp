#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>

#include "mhd2d/run.hpp"
#include "mhd2d/rhs.hpp"
#include "test_support.hpp"

using namespace mhd2d;
using namespace mhd2d::testing;

namespace {

const Grid g64(64, kTwoPi);
const Grid g32(32, kTwoPi);

double l2_inner(const VectorField& a, const VectorField& b) {
  const double l2 = a.grid().box_length() * a.grid().box_length();
  return l2 * ((a.c1.coeffs().conjugate() * b.c1.coeffs()).real().sum() +
               (a.c2.coeffs().conjugate() * b.c2.coeffs()).real().sum());
}

MHDState shear_state(const Grid& g, double amplitude = 1.0) {
  ICSpec spec(g);
  spec.kind = ICSpec::Kind::shear;
  spec.amplitude = amplitude;
  return make_ic(spec);
}

MHDState elsasser_state(const Grid& g, double amplitude = 0.4) {
  ICSpec spec(g);
  spec.kind = ICSpec::Kind::elsasser_aligned;
  spec.amplitude = amplitude;
  return make_ic(spec);
}

}  // namespace

TEST_CASE("rhs: equilibrium is a fixed point") {
  FieldPair r = rhs(MHDState::zero(g64));
  CHECK(norm_l2(r.du) == 0.0);
  CHECK(norm_l2(r.db) == 0.0);
}

TEST_CASE("rhs: aligned u = b cancels the quadratic terms exactly") {
  MHDState st = elsasser_state(g64);
  FieldPair r = rhs(st);
  // both equations reduce to Lap u + d1 u
  SpectralField e1 = laplacian(st.u.c1);
  e1.coeffs() += differentiate(st.u.c1, 1).coeffs();
  SpectralField e2 = laplacian(st.u.c2);
  e2.coeffs() += differentiate(st.u.c2, 1).coeffs();
  const double scale = norm_l2(st.u);
  CHECK(norm_l2(SpectralField(g64, r.du.c1.coeffs() - e1.coeffs(), true)) < 1e-12 * scale);
  CHECK(norm_l2(SpectralField(g64, r.du.c2.coeffs() - e2.coeffs(), true)) < 1e-12 * scale);
  CHECK(norm_l2(SpectralField(g64, r.du.c1.coeffs() - r.db.c1.coeffs(), true)) < 1e-13 * scale);
  CHECK(norm_l2(SpectralField(g64, r.du.c2.coeffs() - r.db.c2.coeffs(), true)) < 1e-13 * scale);
}

TEST_CASE("rhs: shear state, hand-computed") {
  MHDState st = shear_state(g64);
  FieldPair r = rhs(st);
  SpectralField minus_sin =
      field_from(g64, [](double, double x2) { return -std::sin(x2); });
  CHECK(max_physical_diff(r.du.c1, minus_sin) < 1e-12);
  CHECK(norm_l2(r.du.c2) < 1e-13);
  CHECK(norm_l2(r.db.c1) < 1e-13);  // d1 u vanishes for x1-independent u
  CHECK(norm_l2(r.db.c2) < 1e-13);
}

TEST_CASE("regularized_rhs: equilibrium, alignment symmetry, eps -> 0 consistency") {
  CHECK(norm_l2(regularized_rhs(MHDState::zero(g64), 0.2).du) == 0.0);

  MHDState st = elsasser_state(g64);
  FieldPair r = regularized_rhs(st, 0.15);
  const double scale = norm_l2(st.u);
  CHECK(norm_l2(SpectralField(g64, r.du.c1.coeffs() - r.db.c1.coeffs(), true)) < 1e-14 * scale);
  CHECK(norm_l2(SpectralField(g64, r.du.c2.coeffs() - r.db.c2.coeffs(), true)) < 1e-14 * scale);

  // ||regularized - exact|| shrinks with fitted order >= 1 as eps halves
  MHDState rnd = random_state(g64, 21, 0.5);
  FieldPair exact = rhs(rnd);
  std::vector<double> eps = {0.2, 0.1, 0.05}, err;
  for (double e : eps) {
    FieldPair reg = regularized_rhs(rnd, e);
    VectorField diff_u(SpectralField(g64, reg.du.c1.coeffs() - exact.du.c1.coeffs(), true),
                       SpectralField(g64, reg.du.c2.coeffs() - exact.du.c2.coeffs(), true));
    VectorField diff_b(SpectralField(g64, reg.db.c1.coeffs() - exact.db.c1.coeffs(), true),
                       SpectralField(g64, reg.db.c2.coeffs() - exact.db.c2.coeffs(), true));
    const double eu = norm_l2(diff_u), eb = norm_l2(diff_b);
    err.push_back(std::sqrt(eu * eu + eb * eb));
  }
  CHECK(err[1] < err[0]);
  CHECK(err[2] < err[1]);
  CHECK(loglog_slope(eps, err) >= 1.0);

  CHECK_THROWS_AS(regularized_rhs(rnd, 0.25 * kTwoPi), std::invalid_argument);
}

TEST_CASE("step: per-mode linear dispersion over 1000 steps") {
  // u and b independent divergence-free fields, quadratic terms switched off
  MHDState st0 = random_state(g64, 31, 1.0);
  MHDState stb = random_state(g64, 32, 1.0);
  MHDState st(st0.u, stb.u, 0.0);

  SolverOptions opts;
  opts.dt = 1e-3;
  opts.t_end = 1.0;
  opts.linear_only = true;
  const Stepper stepper(g64, opts);
  MHDState cur = st;
  for (int i = 0; i < 1000; ++i) cur = stepper.step(cur);
  CHECK(cur.time == doctest::Approx(1.0).epsilon(1e-12));

  const double t = 1.0;
  double worst = 0.0;
  for (int j = 0; j < g64.n(); ++j) {
    for (int i = 0; i < g64.n(); ++i) {
      const double x1 = g64.wavenumber(i), x2 = g64.wavenumber(j);
      const double k2 = x1 * x1 + x2 * x2;
      const Complex u0 = st.u.c1.coeffs()(i, j), b0 = st.b.c1.coeffs()(i, j);
      const double mag0 = std::max(std::abs(u0), std::abs(b0));
      if (mag0 < 1e-14 || k2 * t > 30.0) continue;
      const Complex zp = (u0 + b0) * std::exp(Complex(-k2 * t, x1 * t));
      const Complex zm = (u0 - b0) * std::exp(Complex(-k2 * t, -x1 * t));
      const Complex ue = 0.5 * (zp + zm), be = 0.5 * (zp - zm);
      worst = std::max(worst, std::abs(cur.u.c1.coeffs()(i, j) - ue) / mag0);
      worst = std::max(worst, std::abs(cur.b.c1.coeffs()(i, j) - be) / mag0);
    }
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("step: shear decay is exact for the full nonlinear scheme") {
  MHDState st = shear_state(g64);
  SolverOptions opts;
  opts.dt = 2e-3;
  opts.t_end = 1.0;
  const Stepper stepper(g64, opts);
  for (int i = 0; i < 500; ++i) st = stepper.step(st);

  SpectralField expect =
      field_from(g64, [](double, double x2) { return std::exp(-1.0) * std::sin(x2); });
  CHECK(max_physical_diff(st.u.c1, expect) < 1e-8);
  CHECK(norm_linf(st.u.c2) < 1e-10);
  CHECK(norm_linf(st.b) < 1e-10);
}

TEST_CASE("step: aligned initial data follows the translation-diffusion closed form") {
  MHDState st0 = elsasser_state(g64);
  MHDState st = st0;
  SolverOptions opts;
  opts.dt = 2e-3;
  opts.t_end = 0.5;
  const Stepper stepper(g64, opts);
  for (int i = 0; i < 250; ++i) st = stepper.step(st);

  const double t = 0.5;
  Eigen::ArrayXXcd expect1 = st0.u.c1.coeffs(), expect2 = st0.u.c2.coeffs();
  for (int j = 0; j < g64.n(); ++j) {
    for (int i = 0; i < g64.n(); ++i) {
      const double x1 = g64.wavenumber(i), x2 = g64.wavenumber(j);
      const Complex f = std::exp(Complex(-(x1 * x1 + x2 * x2) * t, x1 * t));
      expect1(i, j) *= f;
      expect2(i, j) *= f;
    }
  }
  SpectralField e1(g64, std::move(expect1), true), e2(g64, std::move(expect2), true);
  CHECK(max_physical_diff(st.u.c1, e1) < 1e-6);
  CHECK(max_physical_diff(st.u.c2, e2) < 1e-6);
  // u = b preserved (rounding-level asymmetry only, and it decays)
  CHECK((st.u.c1.coeffs() - st.b.c1.coeffs()).abs().maxCoeff() < 1e-12 * norm_linf(st.u));
}

TEST_CASE("step: CFL precondition names the admissible dt") {
  MHDState st = shear_state(g64, 5.0);  // peak speed 5
  SolverOptions opts;
  opts.dt = 0.05;  // above 0.5*h/(5+1) ~ 0.0082
  opts.t_end = 1.0;
  const Stepper stepper(g64, opts);
  try {
    stepper.step(st);
    FAIL("expected CflError");
  } catch (const CflError& e) {
    CHECK(e.admissible_dt > 0.0);
    CHECK(e.admissible_dt < opts.dt);
    CHECK(e.admissible_dt == doctest::Approx(0.5 * g64.spacing() / 6.0).epsilon(1e-6));
  }
}

TEST_CASE("step: scheme convergence orders") {
  MHDState ref_state = random_state(g32, 41, 1.5);

  auto advance = [&](Scheme scheme, double dt, double t_end) {
    SolverOptions opts;
    opts.dt = dt;
    opts.t_end = t_end;
    opts.scheme = scheme;
    const Stepper st(g32, opts);
    MHDState cur = ref_state;
    const long long n = std::llround(t_end / dt);
    for (long long i = 0; i < n; ++i) cur = st.step(cur);
    return cur;
  };

  const double t_end = 0.08;
  MHDState ref = advance(Scheme::ifrk4, 1e-4, t_end);
  auto err_vs_ref = [&](const MHDState& s) {
    double acc = 0.0;
    acc += (s.u.c1.coeffs() - ref.u.c1.coeffs()).abs2().sum();
    acc += (s.u.c2.coeffs() - ref.u.c2.coeffs()).abs2().sum();
    acc += (s.b.c1.coeffs() - ref.b.c1.coeffs()).abs2().sum();
    acc += (s.b.c2.coeffs() - ref.b.c2.coeffs()).abs2().sum();
    return std::sqrt(acc);
  };

  std::vector<double> dts = {8e-3, 4e-3, 2e-3};
  std::vector<double> err2, err4;
  for (double dt : dts) {
    err2.push_back(err_vs_ref(advance(Scheme::ifrk2, dt, t_end)));
    err4.push_back(err_vs_ref(advance(Scheme::ifrk4, dt, t_end)));
  }
  CHECK(loglog_slope(dts, err2) == doctest::Approx(2.0).epsilon(0.2));
  CHECK(loglog_slope(dts, err4) == doctest::Approx(4.0).epsilon(0.2));
}

TEST_CASE("quadratic terms: discrete energy neutrality after dealiasing") {
  MHDState st = random_state(g64, 51, 0.8);
  NonlinearTerms t = nonlinear_terms(st);
  const double u2 = norm_l2(st.u) * norm_l2(st.u);
  const double gradu = norm_grad_l2(st.u);
  const double scale = std::max(1e-300, u2 * gradu);

  VectorField advec_uu = advect(st.u, st.u);
  VectorField advec_ub = advect(st.u, st.b);
  VectorField advec_bb = advect(st.b, st.b);
  VectorField advec_bu = advect(st.b, st.u);
  CHECK(std::abs(l2_inner(advec_uu, st.u)) < 1e-10 * scale);
  CHECK(std::abs(l2_inner(advec_ub, st.b)) < 1e-10 * scale);
  CHECK(std::abs(l2_inner(advec_bb, st.u) + l2_inner(advec_bu, st.b)) < 1e-10 * scale);

  // coupling terms cancel exactly in spectral arithmetic
  VectorField d1u(differentiate(st.u.c1, 1), differentiate(st.u.c2, 1));
  VectorField d1b(differentiate(st.b.c1, 1), differentiate(st.b.c2, 1));
  CHECK(std::abs(l2_inner(d1b, st.u) + l2_inner(d1u, st.b)) < 1e-12 * scale);

  // and the assembled momentum/induction terms put no energy in
  CHECK(std::abs(l2_inner(t.momentum, st.u) + l2_inner(t.induction, st.b)) < 1e-10 * scale);
}

TEST_CASE("pressure_recover: trivial states and the projection cross-check") {
  CHECK(norm_l2(pressure_recover(MHDState::zero(g64))) == 0.0);
  CHECK(norm_l2(pressure_recover(elsasser_state(g64))) < 1e-15);

  MHDState st = random_state(g64, 61, 0.9);
  SpectralField p = pressure_recover(st);
  CHECK(std::abs(p.mean_mode()) == 0.0);

  NonlinearTerms t = nonlinear_terms(st);
  VectorField grad_p = gradient(p);
  VectorField route1(SpectralField(g64, t.momentum.c1.coeffs() - grad_p.c1.coeffs(), true),
                     SpectralField(g64, t.momentum.c2.coeffs() - grad_p.c2.coeffs(), true));
  VectorField route2 = leray_project(t.momentum);
  const double scale = norm_l2(t.momentum);
  CHECK(norm_l2(SpectralField(g64, route1.c1.coeffs() - route2.c1.coeffs(), true)) <
        1e-10 * scale);
  CHECK(norm_l2(SpectralField(g64, route1.c2.coeffs() - route2.c2.coeffs(), true)) <
        1e-10 * scale);
  CHECK(max_divergence(route1) < 1e-10 * scale);
}

TEST_CASE("cumulative_integral: exact on cubics, fourth-order on smooth data") {
  // exact for polynomials through degree 3
  {
    const double h = 0.1;
    const int n = 21;
    std::vector<double> f(n);
    for (int i = 0; i < n; ++i) {
      const double t = h * i;
      f[i] = 2.0 + t - 3.0 * t * t + 0.5 * t * t * t;
    }
    const auto cum = cumulative_integral(f, h);
    auto F = [](double t) { return 2.0 * t + 0.5 * t * t - t * t * t + 0.125 * t * t * t * t; };
    for (int i = 0; i < n; ++i) CHECK(cum[i] == doctest::Approx(F(h * i)).epsilon(1e-13));
  }
  // fitted order ~4 on exp(-2t)
  std::vector<double> hs = {2e-3, 1e-3, 5e-4}, errs;
  for (double h : hs) {
    const int n = static_cast<int>(std::llround(1.0 / h)) + 1;
    std::vector<double> f(n);
    for (int i = 0; i < n; ++i) f[i] = std::exp(-2.0 * h * i);
    const auto cum = cumulative_integral(f, h);
    errs.push_back(std::abs(cum.back() - 0.5 * (1.0 - std::exp(-2.0))));
  }
  CHECK(loglog_slope(hs, errs) == doctest::Approx(4.0).epsilon(0.3));
}

TEST_CASE("run: zero horizon returns the initial state only") {
  MHDState ic = random_state(g32, 71, 0.1);
  SolverOptions solver;
  solver.dt = 1e-2;
  solver.t_end = 0.0;
  RunOptions opts;
  opts.cadence = 1;
  Trajectory traj = run(ic, solver, opts, DiagnosticsParams{});
  REQUIRE(traj.records.size() == 1);
  REQUIRE(traj.states.size() == 1);
  CHECK((traj.states[0].u.c1.coeffs() == ic.u.c1.coeffs()).all());
  CHECK(traj.records[0].energy_residual == 0.0);
}

TEST_CASE("run: divergence and conjugate symmetry hold along the trajectory") {
  MHDState ic = random_state(g64, 81, 0.5);
  SolverOptions solver;
  solver.dt = 5e-3;
  solver.t_end = 0.5;
  RunOptions opts;
  opts.cadence = 10;
  Trajectory traj = run(ic, solver, opts, DiagnosticsParams{});
  REQUIRE(traj.states.size() == 11);
  for (const MHDState& s : traj.states) {
    const double scale =
        std::max({s.u.c1.coeffs().abs().maxCoeff(), s.u.c2.coeffs().abs().maxCoeff(),
                  s.b.c1.coeffs().abs().maxCoeff(), s.b.c2.coeffs().abs().maxCoeff(), 1e-300});
    CHECK(max_divergence(s.u) < 1e-10 * scale);
    CHECK(max_divergence(s.b) < 1e-10 * scale);
    CHECK(s.u.c1.max_conjugate_asymmetry() < 1e-12 * scale);
  }
  // strictly increasing, uniform cadence
  for (size_t i = 1; i < traj.records.size(); ++i)
    CHECK(traj.records[i].time - traj.records[i - 1].time ==
          doctest::Approx(5e-2).epsilon(1e-10));
}

TEST_CASE("run: checkpoint restart reproduces the uninterrupted run bit-exactly") {
  namespace fs = std::filesystem;
  const std::string dir = fs::temp_directory_path() / "mhd2d_restart_test";
  fs::create_directories(dir);
  const std::string ckpt = dir + "/checkpoint.bin";

  MHDState ic = random_state(g32, 91, 0.4);
  SolverOptions solver;
  solver.dt = 5e-3;
  solver.t_end = 0.5;
  RunOptions opts;
  opts.cadence = 10;
  opts.checkpoint_every = 5;  // records at 0.05: checkpoint at t = 0.25 and t = 0.5
  opts.checkpoint_path = ckpt;

  Trajectory full = run(ic, solver, opts, DiagnosticsParams{});

  // rerun only to t = 0.25: identical prefix (including the checkpoint sync),
  // so the file left behind matches what the full run wrote at t = 0.25
  SolverOptions half = solver;
  half.t_end = 0.25;
  Trajectory first = run(ic, half, opts, DiagnosticsParams{});

  RunOptions cont;
  cont.cadence = 10;
  cont.checkpoint_every = 5;  // same rhythm as the uninterrupted run
  cont.checkpoint_path = dir + "/checkpoint_resumed.bin";
  Trajectory resumed = run_restart(ckpt, cont, DiagnosticsParams{}, 0.5);

  const MHDState& a = full.states.back();
  const MHDState& b = resumed.states.back();
  CHECK(a.time == b.time);
  CHECK((a.u.c1.coeffs() == b.u.c1.coeffs()).all());
  CHECK((a.u.c2.coeffs() == b.u.c2.coeffs()).all());
  CHECK((a.b.c1.coeffs() == b.b.c1.coeffs()).all());
  CHECK((a.b.c2.coeffs() == b.b.c2.coeffs()).all());
  fs::remove_all(dir);
}

TEST_CASE("run: aborts flush a partial ledger") {
  namespace fs = std::filesystem;
  const std::string dir = fs::temp_directory_path() / "mhd2d_abort_test";
  fs::remove_all(dir);

  MHDState ic = shear_state(g64, 5.0);
  SolverOptions solver;
  solver.dt = 0.05;  // violates the CFL precondition immediately
  solver.t_end = 1.0;
  RunOptions opts;
  opts.cadence = 1;
  opts.abort_dump_dir = dir;
  CHECK_THROWS_AS(run(ic, solver, opts, DiagnosticsParams{}), CflError);
  CHECK(fs::exists(dir + "/partial_series.csv"));
  CHECK(fs::exists(dir + "/abort_state.bin"));
  fs::remove_all(dir);
}

TEST_CASE("run: twin runs separated by 1e-10 stay exponentially close") {
  MHDState a = random_state(g32, 101, 0.25);
  MHDState b = a;
  // divergence-free single-mode bump of L2 size 1e-10
  ICSpec bump(g32);
  bump.kind = ICSpec::Kind::single_mode;
  bump.k1 = 2;
  bump.k2 = 1;
  bump.amplitude = 1.0;
  MHDState unit = make_ic(bump);
  const double unit_l2 = state_norm_l2(unit);
  const double delta = 1e-10;
  b.u.c1.coeffs() += (delta / unit_l2) * unit.u.c1.coeffs();
  b.u.c2.coeffs() += (delta / unit_l2) * unit.u.c2.coeffs();

  SolverOptions solver;
  solver.dt = 5e-3;
  solver.t_end = 2.0;
  RunOptions opts;
  opts.cadence = 20;
  Trajectory ta = run(a, solver, opts, DiagnosticsParams{});
  Trajectory tb = run(b, solver, opts, DiagnosticsParams{});

  // Gronwall ceiling from the observed fields of both runs
  double gronwall = 0.0;
  for (size_t i = 0; i < ta.states.size(); ++i) {
    const MHDState& s2 = ta.states[i];
    const MHDState& s1 = tb.states[i];
    const double grad_u = norm_linf(VectorField(differentiate(s2.u.c1, 1), differentiate(s2.u.c1, 2)));
    const double grad_u2 = norm_linf(VectorField(differentiate(s2.u.c2, 1), differentiate(s2.u.c2, 2)));
    const double grad_b = norm_linf(VectorField(differentiate(s2.b.c1, 1), differentiate(s2.b.c1, 2)));
    const double grad_b2 = norm_linf(VectorField(differentiate(s2.b.c2, 1), differentiate(s2.b.c2, 2)));
    const double b_inf = norm_linf(s1.b);
    gronwall = std::max(gronwall, grad_u + grad_u2 + grad_b + grad_b2 + 0.5 * b_inf * b_inf);
  }

  for (size_t i = 0; i < ta.states.size(); ++i) {
    double acc = 0.0;
    acc += (ta.states[i].u.c1.coeffs() - tb.states[i].u.c1.coeffs()).abs2().sum();
    acc += (ta.states[i].u.c2.coeffs() - tb.states[i].u.c2.coeffs()).abs2().sum();
    acc += (ta.states[i].b.c1.coeffs() - tb.states[i].b.c1.coeffs()).abs2().sum();
    acc += (ta.states[i].b.c2.coeffs() - tb.states[i].b.c2.coeffs()).abs2().sum();
    const double sep = kTwoPi * std::sqrt(acc);
    CHECK(sep <= delta * std::exp(gronwall * ta.states[i].time) * (1.0 + 1e-6));
  }
}
