#include "mhd2d/diagnostics.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "mhd2d/norms.hpp"

namespace mhd2d {

void DiagnosticsParams::validate() const {
  if (!(s > 2.0))
    throw std::invalid_argument("DiagnosticsParams: sobolev order must satisfy s > 2");
  if (!(eps > 0.0 && eps < 1.0))
    throw std::invalid_argument("DiagnosticsParams: eps must lie in (0, 1)");
  if (!(c1 > 0.0)) throw std::invalid_argument("DiagnosticsParams: c1 must be positive");
}

double g_split(double t) {
  const double e = std::exp(1.0);
  return std::sqrt(3.0 / ((e + t) * std::log(e + t)));
}

LowFreqEnergy low_freq_energy(const MHDState& state, double t, double c1) {
  if (t < 0.0) throw std::invalid_argument("low_freq_energy: t must be nonnegative");
  if (!(c1 > 0.0)) throw std::invalid_argument("low_freq_energy: c1 must be positive");
  const Grid& g = state.grid();
  const int n = g.n();
  const double thr2 = g_split(t) * g_split(t) / c1;
  const double l2sq = g.box_length() * g.box_length();
  LowFreqEnergy out;
  for (int j = 0; j < n; ++j) {
    const double xj = g.wavenumber(j);
    for (int i = 0; i < n; ++i) {
      const double xi = g.wavenumber(i);
      const double k2 = xi * xi + xj * xj;
      if (k2 == 0.0 || k2 > thr2) continue;
      ++out.modes;
      out.energy += l2sq * (std::norm(state.u.c1.coeffs()(i, j)) +
                            std::norm(state.u.c2.coeffs()(i, j)) +
                            std::norm(state.b.c1.coeffs()(i, j)) +
                            std::norm(state.b.c2.coeffs()(i, j)));
    }
  }
  out.saturated = out.modes == 0;
  return out;
}

DiagnosticsRecord make_record(const MHDState& state, const DiagnosticsParams& params) {
  DiagnosticsRecord r;
  r.time = state.time;
  r.l2_u = norm_l2(state.u);
  r.l2_b = norm_l2(state.b);
  r.grad_l2_u = norm_grad_l2(state.u);
  r.grad_l2_b = norm_grad_l2(state.b);
  r.hs = state_norm_hs(state, params.s);
  r.hdot_neg = state_norm_hdot(state, -params.eps);
  const LowFreqEnergy lf = low_freq_energy(state, state.time, params.c1);
  r.low_freq_energy = lf.energy;
  r.low_freq_modes = lf.modes;
  r.g_value = g_split(state.time);
  return r;
}

std::vector<double> energy_report(const Trajectory& traj) {
  std::vector<double> residuals;
  if (traj.records.empty()) return residuals;
  const double e0 = traj.records.front().energy();
  residuals.reserve(traj.records.size());
  for (const auto& r : traj.records)
    residuals.push_back(r.energy() + 2.0 * r.cumulative_dissipation - e0);
  return residuals;
}

namespace {

struct LineFit {
  double slope = 0.0, intercept = 0.0, rms = 0.0;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double denom = n * sxx - sx * sx;
  LineFit f;
  f.slope = (n * sxy - sx * sy) / denom;
  f.intercept = (sy - f.slope * sx) / n;
  double ss = 0;
  for (size_t i = 0; i < n; ++i) {
    const double r = y[i] - (f.slope * x[i] + f.intercept);
    ss += r * r;
  }
  f.rms = std::sqrt(ss / n);
  return f;
}

}  // namespace

DecayFit fit_decay_exponent(const std::vector<double>& times, const std::vector<double>& norms,
                            double t0, double t1) {
  if (times.size() != norms.size())
    throw std::invalid_argument("fit_decay_exponent: series length mismatch");
  if (!(t0 < t1)) throw std::invalid_argument("fit_decay_exponent: window must satisfy t0 < t1");
  const double e = std::exp(1.0);
  std::vector<double> x, y;
  for (size_t i = 0; i < times.size(); ++i) {
    if (times[i] < t0 || times[i] > t1) continue;
    if (!(norms[i] > 0.0))
      throw std::invalid_argument("fit_decay_exponent: norms must be positive in the window");
    x.push_back(std::log(e + times[i]));
    y.push_back(std::log(norms[i]));
  }
  if (x.size() < 8)
    throw std::invalid_argument("fit_decay_exponent: degenerate window (fewer than 8 samples)");

  const LineFit whole = least_squares(x, y);
  DecayFit fit;
  fit.kappa_hat = -whole.slope;
  fit.t0 = t0;
  fit.t1 = t1;
  fit.residual = whole.rms;
  fit.samples = static_cast<int>(x.size());

  const size_t half = x.size() / 2;
  if (half >= 4) {
    const LineFit a = least_squares(std::vector<double>(x.begin(), x.begin() + half),
                                    std::vector<double>(y.begin(), y.begin() + half));
    const LineFit b = least_squares(std::vector<double>(x.begin() + half, x.end()),
                                    std::vector<double>(y.begin() + half, y.end()));
    if (a.slope != 0.0 && std::abs(b.slope - a.slope) > 0.5 * std::abs(a.slope))
      fit.saturated = true;
  }
  return fit;
}

DecayFit fit_decay_exponent(const Trajectory& traj, double t0, double t1) {
  std::vector<double> t, v;
  t.reserve(traj.records.size());
  v.reserve(traj.records.size());
  for (const auto& r : traj.records) {
    t.push_back(r.time);
    v.push_back(r.l2_pair());
  }
  return fit_decay_exponent(t, v, t0, t1);
}

HsMonitorReport hs_monitor(const Trajectory& traj, double s) {
  if (!(s > 2.0)) throw std::invalid_argument("hs_monitor: requires s > 2");
  if (traj.records.empty()) throw std::invalid_argument("hs_monitor: empty trajectory");

  HsMonitorReport rep;
  if (s == traj.diag.s) {
    rep.initial = traj.records.front().hs;
    for (const auto& r : traj.records) {
      if (r.hs >= rep.max_value) {
        rep.max_value = r.hs;
        rep.max_time = r.time;
      }
    }
  } else if (!traj.states.empty()) {
    rep.initial = state_norm_hs(traj.states.front(), s);
    for (const auto& st : traj.states) {
      const double v = state_norm_hs(st, s);
      if (v >= rep.max_value) {
        rep.max_value = v;
        rep.max_time = st.time;
      }
    }
  } else {
    throw std::invalid_argument(
        "hs_monitor: order differs from the recorded one and no states were stored");
  }
  rep.ratio = rep.initial > 0.0 ? rep.max_value / rep.initial : 0.0;
  rep.growth_warning = rep.initial > 0.0 && rep.max_value > 10.0 * rep.initial;
  return rep;
}

DuhamelReport duhamel_lowfreq_bound(const Trajectory& traj, double eps, double c1) {
  if (!(eps > 0.0 && eps < 1.0))
    throw std::invalid_argument("duhamel_lowfreq_bound: eps must lie in (0,1)");
  const double kappa = std::min(eps, 0.5);
  const auto& recs = traj.records;
  DuhamelReport rep;
  if (recs.empty()) return rep;

  // cumulative int ||(u,b)||_L2^2 by trapezoid over the sampled ledger
  std::vector<double> cum(recs.size(), 0.0);
  for (size_t i = 1; i < recs.size(); ++i) {
    const double dt = recs[i].time - recs[i - 1].time;
    cum[i] = cum[i - 1] + 0.5 * dt * (recs[i].energy() + recs[i - 1].energy());
  }

  std::vector<double> lhs, total, env_log_ratio;
  for (size_t i = 0; i < recs.size(); ++i) {
    if (recs[i].low_freq_modes == 0) continue;  // saturated shell
    const double t = recs[i].time;
    const double g2 = recs[i].g_value * recs[i].g_value / c1;
    const double t1 = std::pow(1.0 + t, -2.0 * kappa);
    const double t2 = g2 * g2 * cum[i] * cum[i];
    lhs.push_back(recs[i].low_freq_energy);
    total.push_back(t1 + t2);
    if (recs[i].low_freq_energy > 0.0)
      env_log_ratio.push_back(std::log(recs[i].low_freq_energy) + 2.0 * kappa * std::log(1.0 + t));
  }
  rep.samples_used = static_cast<int>(lhs.size());
  if (lhs.empty()) return rep;

  double log_c = 0.0;
  int positives = 0;
  for (size_t i = 0; i < lhs.size(); ++i) {
    if (lhs[i] > 0.0) {
      log_c += std::log(lhs[i] / total[i]);
      ++positives;
    }
  }
  if (positives == 0) return rep;  // zero data: ratios are all 0
  rep.c_fit = std::exp(log_c / positives);
  for (size_t i = 0; i < lhs.size(); ++i)
    rep.max_ratio = std::max(rep.max_ratio, lhs[i] / (rep.c_fit * total[i]));

  double mean = 0.0;
  for (double v : env_log_ratio) mean += v;
  mean /= static_cast<double>(env_log_ratio.size());
  rep.envelope_c = std::exp(mean);
  double ss = 0.0;
  for (double v : env_log_ratio) ss += (v - mean) * (v - mean);
  rep.rms_log_misfit = std::sqrt(ss / static_cast<double>(env_log_ratio.size()));
  return rep;
}

void write_records_csv(const std::string& path, const std::vector<DiagnosticsRecord>& records) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw std::runtime_error("csv: cannot open " + path + " for writing");
  os << "time,l2_u,l2_b,grad_l2_u,grad_l2_b,hs,hdot_neg,low_freq_energy,g_value,energy_residual\n";
  char line[512];
  for (const auto& r : records) {
    std::snprintf(line, sizeof(line),
                  "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.time, r.l2_u,
                  r.l2_b, r.grad_l2_u, r.grad_l2_b, r.hs, r.hdot_neg, r.low_freq_energy, r.g_value,
                  r.energy_residual);
    os << line;
  }
  if (!os) throw std::runtime_error("csv: write failed for " + path);
}

std::vector<DiagnosticsRecord> read_records_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("csv: cannot open " + path);
  std::string header;
  if (!std::getline(is, header)) throw std::runtime_error("csv: empty file " + path);
  const std::string expected =
      "time,l2_u,l2_b,grad_l2_u,grad_l2_b,hs,hdot_neg,low_freq_energy,g_value,energy_residual";
  if (header != expected) throw std::runtime_error("csv: unexpected header in " + path);
  std::vector<DiagnosticsRecord> records;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    DiagnosticsRecord r;
    std::istringstream ss(line);
    char comma;
    ss >> r.time >> comma >> r.l2_u >> comma >> r.l2_b >> comma >> r.grad_l2_u >> comma >>
        r.grad_l2_b >> comma >> r.hs >> comma >> r.hdot_neg >> comma >> r.low_freq_energy >>
        comma >> r.g_value >> comma >> r.energy_residual;
    if (ss.fail()) throw std::runtime_error("csv: malformed line in " + path);
    // the shell mode count is not a CSV column; recover the saturation flag
    r.low_freq_modes = r.low_freq_energy > 0.0 ? 1 : 0;
    records.push_back(r);
  }
  return records;
}

}  // namespace mhd2d
