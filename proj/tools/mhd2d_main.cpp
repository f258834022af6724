// Command-line front end: run simulations, post-process ledgers, exercise the
// inequality harness, generate initial conditions, and drive refinement studies.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "mhd2d/config.hpp"
#include "mhd2d/diagnostics.hpp"
#include "mhd2d/ic.hpp"
#include "mhd2d/ineq.hpp"
#include "mhd2d/norms.hpp"
#include "mhd2d/operators.hpp"
#include "mhd2d/run.hpp"
#include "mhd2d/snapshot.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace mhd2d;

namespace {

constexpr int kSchemaVersion = 1;

struct CommonFlags {
  std::string out_dir;
  bool quiet = false;
};

void write_json_file(const std::string& path, const json& j) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  os << j.dump(2) << "\n";
}

void say(const CommonFlags& flags, const std::string& line) {
  if (!flags.quiet) std::cout << line << "\n";
}

json decay_fit_json(const DecayFit& fit) {
  return json{{"kappa_hat", fit.kappa_hat}, {"t0", fit.t0},
              {"t1", fit.t1},               {"rms_log_residual", fit.residual},
              {"saturated", fit.saturated}, {"samples", fit.samples}};
}

json duhamel_json(const DuhamelReport& rep, double eps, double c1) {
  return json{{"eps", eps},
              {"c1", c1},
              {"c_fit", rep.c_fit},
              {"max_ratio", rep.max_ratio},
              {"envelope_c", rep.envelope_c},
              {"rms_log_misfit", rep.rms_log_misfit},
              {"samples_used", rep.samples_used}};
}

json ineq_report_json(const InequalityReport& rep, const CorpusSpec& spec) {
  return json{{"schema_version", kSchemaVersion},
              {"name", rep.name},
              {"samples", rep.samples},
              {"max_ratio", rep.max_ratio},
              {"quantile_probs", kQuantileProbs},
              {"quantiles", rep.quantiles},
              {"worst_case_seed", rep.worst_case_seed},
              {"trivial", rep.trivial},
              {"corpus", json{{"n", spec.n},
                              {"box_length", spec.box_length},
                              {"samples", spec.samples},
                              {"seed", spec.seed},
                              {"k_gen", spec.k_gen}}}};
}

double state_scale(const MHDState& s) {
  return std::max({s.u.c1.coeffs().abs().maxCoeff(), s.u.c2.coeffs().abs().maxCoeff(),
                   s.b.c1.coeffs().abs().maxCoeff(), s.b.c2.coeffs().abs().maxCoeff(), 1e-300});
}

json state_report(const MHDState& st, const DiagnosticsParams& diag) {
  return json{{"time", st.time},
              {"l2", state_norm_l2(st)},
              {"l2_u", norm_l2(st.u)},
              {"l2_b", norm_l2(st.b)},
              {"hs", state_norm_hs(st, diag.s)},
              {"hs_order", diag.s},
              {"hdot_neg", state_norm_hdot(st, -diag.eps)},
              {"hdot_order", -diag.eps},
              {"linf_u", norm_linf(st.u)},
              {"linf_b", norm_linf(st.b)},
              {"max_divergence_rel", std::max(max_divergence(st.u), max_divergence(st.b)) /
                                         state_scale(st)}};
}

MHDState build_ic(const SimConfig& config) {
  MHDState st = make_ic(config.ic_spec());
  if (config.ic_calibrate_hs > 0.0)
    st = amplitude_calibrate(st, config.ic_calibrate_hs, config.diag.s);
  return st;
}

int cmd_run(SimConfig config, const CommonFlags& flags, const std::string& restart,
            std::optional<double> t_end_override) {
  if (!flags.out_dir.empty()) config.out_dir = flags.out_dir;
  fs::create_directories(config.out_dir);
  const std::string hash = config_hash(config);
  {
    std::ofstream echo(config.out_dir + "/config_echo.txt");
    echo << serialize_config(config);
  }

  Trajectory traj(config.grid());
  if (restart.empty()) {
    MHDState ic = build_ic(config);
    write_state_snapshot(config.out_dir + "/state_initial.bin", ic);
    if (t_end_override) config.solver.t_end = *t_end_override;
    traj = run(ic, config.solver, config.run_options(), config.diag);
  } else {
    traj = run_restart(restart, config.run_options(), config.diag, t_end_override);
  }

  if (config.write_csv) write_records_csv(config.out_dir + "/series.csv", traj.records);
  if (!traj.states.empty()) {
    write_state_snapshot(config.out_dir + "/state_final.bin", traj.states.back());
    if (config.snapshot_every > 0) {
      for (size_t i = 0; i < traj.states.size();
           i += static_cast<size_t>(config.snapshot_every)) {
        char name[64];
        std::snprintf(name, sizeof(name), "/state_%06zu.bin", i);
        write_state_snapshot(config.out_dir + name, traj.states[i]);
      }
    }
  }

  json summary{{"schema_version", kSchemaVersion},
               {"kind", "run_summary"},
               {"config_hash", hash},
               {"seed", config.ic_seed},
               {"records", traj.records.size()},
               {"final_time", traj.records.back().time}};

  double max_residual = 0.0;
  bool all_finite = true;
  for (const auto& r : traj.records) {
    max_residual = std::max(max_residual, std::abs(r.energy_residual));
    if (!std::isfinite(r.energy()) || !std::isfinite(r.hs)) all_finite = false;
  }
  const double e0 = traj.records.front().energy();
  summary["max_abs_energy_residual"] = max_residual;
  summary["max_rel_energy_residual"] = e0 > 0.0 ? max_residual / e0 : 0.0;

  try {
    const auto [t0, t1] = config.fit_window();
    DecayFit fit = fit_decay_exponent(traj, t0, t1);
    summary["decay_fit"] = decay_fit_json(fit);
  } catch (const std::exception& e) {
    summary["decay_fit"] = json{{"skipped", e.what()}};
  }
  try {
    HsMonitorReport hs = hs_monitor(traj, config.diag.s);
    summary["hs_monitor"] = json{{"initial", hs.initial},
                                 {"max", hs.max_value},
                                 {"max_time", hs.max_time},
                                 {"ratio", hs.ratio},
                                 {"growth_warning", hs.growth_warning}};
  } catch (const std::exception& e) {
    summary["hs_monitor"] = json{{"skipped", e.what()}};
  }
  summary["duhamel"] = duhamel_json(duhamel_lowfreq_bound(traj, config.diag.eps, config.diag.c1),
                                    config.diag.eps, config.diag.c1);

  // post-run invariants: solenoidal, conjugate-symmetric, finite
  std::vector<std::string> violations;
  if (!all_finite) violations.push_back("non-finite ledger entry");
  if (!traj.states.empty()) {
    const MHDState& last = traj.states.back();
    const double scale = state_scale(last);
    if (std::max(max_divergence(last.u), max_divergence(last.b)) > 1e-10 * scale)
      violations.push_back("final state is not divergence-free to 1e-10");
    if (last.u.c1.max_conjugate_asymmetry() > 1e-10 * scale)
      violations.push_back("final state lost conjugate symmetry");
  }
  summary["assertions_passed"] = violations.empty();
  summary["violations"] = violations;
  write_json_file(config.out_dir + "/summary.json", summary);

  say(flags, "run: " + std::to_string(traj.records.size()) + " records to t = " +
                 std::to_string(traj.records.back().time) + ", artifacts in " + config.out_dir);
  if (!violations.empty()) {
    for (const auto& v : violations) std::cerr << "assertion failed: " << v << "\n";
    return 2;
  }
  return 0;
}

int cmd_diag(const std::string& csv_path, CommonFlags flags, double fit_t0, double fit_t1,
             double eps, double c1) {
  const auto records = read_records_csv(csv_path);
  if (records.empty()) throw std::runtime_error("diag: empty ledger " + csv_path);
  if (flags.out_dir.empty()) flags.out_dir = fs::path(csv_path).parent_path().string();
  if (flags.out_dir.empty()) flags.out_dir = ".";
  fs::create_directories(flags.out_dir);

  std::vector<double> times, norms;
  for (const auto& r : records) {
    times.push_back(r.time);
    norms.push_back(r.l2_pair());
  }
  const double span = times.back() - times.front();
  const double t0 = fit_t0 >= 0.0 ? fit_t0 : times.front() + 0.25 * span;
  const double t1 = fit_t1 >= 0.0 ? fit_t1 : times.front() + 0.75 * span;

  json out{{"schema_version", kSchemaVersion}, {"kind", "diag_report"}, {"source", csv_path}};
  DecayFit fit = fit_decay_exponent(times, norms, t0, t1);
  out["decay_fit"] = decay_fit_json(fit);

  Trajectory shell(Grid(8, 1.0));  // records-only carrier for the post-processing ops
  shell.records = records;
  out["duhamel"] = duhamel_json(duhamel_lowfreq_bound(shell, eps, c1), eps, c1);
  out["energy_residual_max"] = [&] {
    double m = 0.0;
    for (const auto& r : records) m = std::max(m, std::abs(r.energy_residual));
    return m;
  }();

  write_json_file(flags.out_dir + "/diag_report.json", out);
  char line[160];
  std::snprintf(line, sizeof(line), "diag: kappa_hat = %.4f over [%.3g, %.3g]%s rms %.3g",
                fit.kappa_hat, t0, t1, fit.saturated ? " [saturated]" : "", fit.residual);
  say(flags, line);
  return 0;
}

int cmd_ineq(const std::string& suite, CommonFlags flags, CorpusSpec spec, double s, double p,
             double q, bool check_stability) {
  if (flags.out_dir.empty()) flags.out_dir = "out";
  fs::create_directories(flags.out_dir);

  const bool all = suite == "all";
  std::vector<InequalityReport> reports;
  if (all || suite == "calculus")
    for (const auto& rep : check_calculus(spec, s)) reports.push_back(rep);
  if (all || suite == "log_sobolev") reports.push_back(check_log_sobolev(spec, p));
  if (all || suite == "gn") {
    reports.push_back(check_gn(spec, 2.0));
    if (q != 2.0) reports.push_back(check_gn(spec, q));
  }
  if (reports.empty()) throw std::runtime_error("ineq: unknown suite '" + suite + "'");

  int status = 0;
  for (const auto& rep : reports) {
    json j = ineq_report_json(rep, spec);
    if (check_stability) {
      CorpusSpec doubled = spec;
      doubled.n *= 2;
      InequalityReport rep2;
      if (rep.name == "product_hs")
        rep2 = check_calculus(doubled, s)[0];
      else if (rep.name == "product_hs_hs")
        rep2 = check_calculus(doubled, s)[1];
      else if (rep.name == "commutator")
        rep2 = check_calculus(doubled, s)[2];
      else if (rep.name == "log_sobolev")
        rep2 = check_log_sobolev(doubled, p);
      else if (rep.name == "gagliardo_nirenberg_q2")
        rep2 = check_gn(doubled, 2.0);
      else
        rep2 = check_gn(doubled, q);
      const double stability = rep.max_ratio > 0.0 ? rep2.max_ratio / rep.max_ratio : 1.0;
      const bool ok = stability > 0.5 && stability < 2.0;
      j["stability"] = json{{"n_doubled", doubled.n},
                            {"max_ratio_doubled", rep2.max_ratio},
                            {"ratio", stability},
                            {"within_factor_two", ok}};
      if (!ok) status = 2;
    }
    if (!std::isfinite(rep.max_ratio)) status = 2;
    write_json_file(flags.out_dir + "/ineq_" + rep.name + ".json", j);
    char line[160];
    std::snprintf(line, sizeof(line), "ineq %-26s max_ratio %.6g (samples %d, trivial %d)",
                  rep.name.c_str(), rep.max_ratio, rep.samples, rep.trivial);
    say(flags, line);
  }
  return status;
}

int cmd_ic(SimConfig config, const CommonFlags& flags) {
  if (!flags.out_dir.empty()) config.out_dir = flags.out_dir;
  fs::create_directories(config.out_dir);
  MHDState st = build_ic(config);
  write_state_snapshot(config.out_dir + "/ic.bin", st);
  json report{{"schema_version", kSchemaVersion},
              {"kind", "ic_report"},
              {"config_hash", config_hash(config)},
              {"ic_kind", config.ic_kind},
              {"seed", config.ic_seed},
              {"state", state_report(st, config.diag)}};
  write_json_file(config.out_dir + "/ic_report.json", report);
  say(flags, "ic: " + config.ic_kind + " written to " + config.out_dir +
                 " (l2 = " + std::to_string(state_norm_l2(st)) + ")");
  return 0;
}

double fitted_order(const std::vector<double>& h, const std::vector<double>& e) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const size_t n = h.size();
  for (size_t i = 0; i < n; ++i) {
    const double lx = std::log(h[i]), ly = std::log(std::max(e[i], 1e-300));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

MHDState final_state(const MHDState& ic, const SolverOptions& solver,
                     const DiagnosticsParams& diag) {
  RunOptions opts;
  opts.cadence = static_cast<int>(std::llround(solver.t_end / solver.dt));
  opts.store_states = true;
  return run(ic, solver, opts, diag).states.back();
}

double state_l2_distance(const MHDState& a, const MHDState& b) {
  double acc = 0.0;
  acc += (a.u.c1.coeffs() - b.u.c1.coeffs()).abs2().sum();
  acc += (a.u.c2.coeffs() - b.u.c2.coeffs()).abs2().sum();
  acc += (a.b.c1.coeffs() - b.b.c1.coeffs()).abs2().sum();
  acc += (a.b.c2.coeffs() - b.b.c2.coeffs()).abs2().sum();
  return a.grid().box_length() * std::sqrt(acc);
}

int cmd_convergence(const std::string& study, SimConfig config, const CommonFlags& flags) {
  if (!flags.out_dir.empty()) config.out_dir = flags.out_dir;
  fs::create_directories(config.out_dir);
  MHDState ic = build_ic(config);

  json out{{"schema_version", kSchemaVersion},
           {"kind", "convergence_report"},
           {"study", study},
           {"config_hash", config_hash(config)}};
  int status = 0;
  char line[160];

  if (study == "dt") {
    std::vector<double> dts = {config.solver.dt, 0.5 * config.solver.dt,
                               0.25 * config.solver.dt};
    std::vector<double> residuals;
    for (size_t i = 0; i < dts.size(); ++i) {
      SolverOptions solver = config.solver;
      solver.dt = dts[i];
      RunOptions ropts;
      ropts.store_states = false;
      ropts.cadence = config.cadence << i;
      Trajectory traj = run(ic, solver, ropts, config.diag);
      double worst = 0.0;
      for (const auto& r : traj.records) worst = std::max(worst, std::abs(r.energy_residual));
      residuals.push_back(worst);
    }
    const double order = fitted_order(dts, residuals);
    const double expected = config.solver.scheme == Scheme::ifrk2 ? 2.0 : 4.0;
    out["dts"] = dts;
    out["max_abs_energy_residuals"] = residuals;
    out["fitted_order"] = order;
    out["expected_order"] = expected;
    const bool ok = std::abs(order - expected) <= 0.5 && residuals[1] < residuals[0] &&
                    residuals[2] < residuals[1];
    out["pass"] = ok;
    if (!ok) status = 2;
    std::snprintf(line, sizeof(line), "convergence dt: fitted order %.3f (expected %.1f) %s",
                  order, expected, ok ? "pass" : "FAIL");
    say(flags, line);
  } else if (study == "eps_reg") {
    SolverOptions exact = config.solver;
    exact.mode = RhsMode::exact;
    const MHDState ref = final_state(ic, exact, config.diag);

    std::vector<double> eps_list = {0.2, 0.1, 0.05};
    std::vector<double> errors;
    for (double e : eps_list) {
      SolverOptions reg = config.solver;
      reg.mode = RhsMode::regularized;
      reg.eps_reg = e;
      errors.push_back(state_l2_distance(final_state(ic, reg, config.diag), ref));
    }
    const double order = fitted_order(eps_list, errors);
    out["eps_reg"] = eps_list;
    out["l2_errors"] = errors;
    out["fitted_order"] = order;
    const bool monotone = errors[1] < errors[0] && errors[2] < errors[1];
    const bool ok = order >= 1.0 && monotone;
    out["pass"] = ok;
    if (!ok) status = 2;
    std::snprintf(line, sizeof(line), "convergence eps_reg: fitted order %.3f (monotone %s) %s",
                  order, monotone ? "yes" : "no", ok ? "pass" : "FAIL");
    say(flags, line);
  } else {
    throw std::runtime_error("convergence: unknown study '" + study + "'");
  }

  write_json_file(config.out_dir + "/convergence_" + study + ".json", out);
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"2-D incompressible MHD pseudospectral simulator and verification suite"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::string config_path, restart_path, csv_path;
  double t_end_flag = -1.0;
  uint64_t seed_flag = 0;
  bool seed_given = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--out", flags.out_dir, "output directory (overrides config)");
    cmd->add_flag("--quiet", flags.quiet, "suppress progress lines");
  };

  auto* c_run = app.add_subcommand("run", "integrate a configured simulation");
  c_run->add_option("--config", config_path, "config file")->required();
  c_run->add_option("--restart", restart_path, "resume from a checkpoint file");
  c_run->add_option("--t-end", t_end_flag, "override the time horizon");
  c_run->add_option("--seed", seed_flag, "override the initial-condition seed")
      ->each([&](const std::string&) { seed_given = true; });
  add_common(c_run);

  auto* c_diag = app.add_subcommand("diag", "post-process a ledger CSV");
  double fit_t0 = -1.0, fit_t1 = -1.0, diag_eps = 0.3, diag_c1 = 1.0;
  c_diag->add_option("--csv", csv_path, "series.csv from a run")->required();
  c_diag->add_option("--fit-t0", fit_t0, "decay-fit window start");
  c_diag->add_option("--fit-t1", fit_t1, "decay-fit window end");
  c_diag->add_option("--eps", diag_eps, "negative homogeneous order for the shell bound");
  c_diag->add_option("--c1", diag_c1, "frequency-splitting constant");
  add_common(c_diag);

  auto* c_ineq = app.add_subcommand("ineq", "run the inequality harness");
  std::string suite = "all";
  CorpusSpec corpus;
  double ineq_s = 2.5, ineq_p = 4.0, ineq_q = 4.0;
  bool check_stability = false;
  c_ineq->add_option("--suite", suite, "all | calculus | log_sobolev | gn");
  c_ineq->add_option("--n", corpus.n, "grid points per axis");
  c_ineq->add_option("--samples", corpus.samples, "corpus size (>= 100)");
  c_ineq->add_option("--seed", corpus.seed, "corpus seed");
  c_ineq->add_option("--k-gen", corpus.k_gen, "highest generated wave index");
  c_ineq->add_option("--s", ineq_s, "Sobolev order for the product/commutator bounds");
  c_ineq->add_option("--p", ineq_p, "gradient integrability for the log bound");
  c_ineq->add_option("--q", ineq_q, "exponent for the q-power bound");
  c_ineq->add_flag("--check-stability", check_stability, "re-run at 2n and compare");
  add_common(c_ineq);

  auto* c_ic = app.add_subcommand("ic", "generate and inspect an initial condition");
  c_ic->add_option("--config", config_path, "config file")->required();
  c_ic->add_option("--seed", seed_flag, "override the initial-condition seed")
      ->each([&](const std::string&) { seed_given = true; });
  add_common(c_ic);

  auto* c_conv = app.add_subcommand("convergence", "dt / eps_reg refinement studies");
  std::string study;
  c_conv->add_option("--study", study, "dt | eps_reg")->required();
  c_conv->add_option("--config", config_path, "config file")->required();
  add_common(c_conv);

  CLI11_PARSE(app, argc, argv);

  try {
    auto load = [&]() {
      SimConfig config = load_config_file(config_path);
      if (seed_given) config.ic_seed = seed_flag;
      return config;
    };
    if (app.got_subcommand(c_run)) {
      std::optional<double> t_end;
      if (t_end_flag >= 0.0) t_end = t_end_flag;
      return cmd_run(load(), flags, restart_path, t_end);
    }
    if (app.got_subcommand(c_diag))
      return cmd_diag(csv_path, flags, fit_t0, fit_t1, diag_eps, diag_c1);
    if (app.got_subcommand(c_ineq))
      return cmd_ineq(suite, flags, corpus, ineq_s, ineq_p, ineq_q, check_stability);
    if (app.got_subcommand(c_ic)) return cmd_ic(load(), flags);
    if (app.got_subcommand(c_conv)) return cmd_convergence(study, load(), flags);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
