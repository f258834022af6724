#pragma once

#include <string>
#include <vector>

#include "mhd2d/spectral_field.hpp"
#include "mhd2d/stepper.hpp"

namespace mhd2d {

/// Per-sample norm ledger. Energy bookkeeping convention: E(t) = ||u||_L2^2 +
/// ||b||_L2^2 and the dissipation integral carries the factor 2 from
/// d/dt E = -2 (||grad u||^2 + ||grad b||^2), so
/// energy_residual = E(t) + 2 * cumulative_dissipation - E(0).
struct DiagnosticsRecord {
  double time = 0.0;
  double l2_u = 0.0, l2_b = 0.0;
  double grad_l2_u = 0.0, grad_l2_b = 0.0;
  double hs = 0.0;        // ||(u,b)||_{H^s} at the configured s
  double hdot_neg = 0.0;  // ||(u,b)||_{Hdot^{-eps}} at the configured eps
  double low_freq_energy = 0.0;
  int low_freq_modes = 0;
  double g_value = 0.0;
  double cumulative_dissipation = 0.0;  // integral of ||grad u||^2 + ||grad b||^2
  double energy_residual = 0.0;

  double energy() const { return l2_u * l2_u + l2_b * l2_b; }
  double l2_pair() const { return std::sqrt(energy()); }
};

struct DiagnosticsParams {
  double s = 2.5;    // Sobolev monitor order (must exceed 2)
  double eps = 0.3;  // negative homogeneous order (must lie in (0,1))
  double c1 = 1.0;   // frequency-splitting constant

  void validate() const;
};

/// Splitting radius scale: g(t) = sqrt(3 / ((e + t) ln(e + t))).
double g_split(double t);

struct LowFreqEnergy {
  double energy = 0.0;  // Plancherel-normalized: full capture equals ||(u,b)||_L2^2
  int modes = 0;        // nonzero modes inside the shell (ties included)
  bool saturated = false;
};

/// Energy of modes with 0 < |xi| <= g(t)/sqrt(c1); saturated when the shell
/// holds no nonzero wavenumber (box too coarse or t too large).
LowFreqEnergy low_freq_energy(const MHDState& state, double t, double c1);

DiagnosticsRecord make_record(const MHDState& state, const DiagnosticsParams& params);

struct Trajectory {
  Grid grid;
  SolverOptions solver;
  DiagnosticsParams diag;
  std::vector<MHDState> states;  // sampled at cadence when stored
  std::vector<DiagnosticsRecord> records;

  explicit Trajectory(const Grid& g) : grid(g) {}
};

/// Residual series E(t) + 2 int D - E(0) recomputed from the ledger.
std::vector<double> energy_report(const Trajectory& traj);

struct DecayFit {
  double kappa_hat = 0.0;  // minus the LSQ slope of log||.|| against log(e+t)
  double t0 = 0.0, t1 = 0.0;
  double residual = 0.0;  // rms misfit in log space
  bool saturated = false;  // relative slope change across half-windows > 50%
  int samples = 0;
};

/// Fit over samples with t in [t0, t1]; rejects windows holding fewer than 8
/// samples or nonpositive norms.
DecayFit fit_decay_exponent(const std::vector<double>& times, const std::vector<double>& norms,
                            double t0, double t1);
DecayFit fit_decay_exponent(const Trajectory& traj, double t0, double t1);

struct HsMonitorReport {
  double initial = 0.0;
  double max_value = 0.0;
  double max_time = 0.0;
  double ratio = 0.0;      // max / initial
  bool growth_warning = false;  // ratio > 10 (not an error)
};

/// Running max of ||(u,b)||_{H^s}; s must exceed 2 and match the recorded order
/// unless sampled states are stored for recomputation.
HsMonitorReport hs_monitor(const Trajectory& traj, double s);

struct DuhamelReport {
  double c_fit = 0.0;      // single constant fitted to LHS / (T1 + T2)
  double max_ratio = 0.0;  // max over samples of LHS / (c_fit * (T1 + T2))
  double envelope_c = 0.0;     // constant of the pure (1+t)^{-2 kappa} envelope
  double rms_log_misfit = 0.0;  // rms of log LHS against that envelope
  int samples_used = 0;
};

/// Compare the shell energy against (1+t)^{-2 kappa} + g^4 (int ||(u,b)||^2)^2
/// with kappa = min(eps, 1/2); saturated shells are excluded.
DuhamelReport duhamel_lowfreq_bound(const Trajectory& traj, double eps, double c1);

/// CSV time series, fixed column order:
/// time,l2_u,l2_b,grad_l2_u,grad_l2_b,hs,hdot_neg,low_freq_energy,g_value,energy_residual
void write_records_csv(const std::string& path, const std::vector<DiagnosticsRecord>& records);
std::vector<DiagnosticsRecord> read_records_csv(const std::string& path);

}  // namespace mhd2d
