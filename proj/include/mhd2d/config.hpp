#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mhd2d/diagnostics.hpp"
#include "mhd2d/ic.hpp"
#include "mhd2d/run.hpp"

namespace mhd2d {

/// Full experiment description. Serialized as versioned key-value text:
/// '#' comments, [section] headers, key = value lines; parsing validates every
/// key and reports all violations, and unknown keys are errors.
struct SimConfig {
  int schema_version = 1;

  // [grid]
  int n = 128;
  double box_length = kTwoPi;

  // [ic]
  std::string ic_kind = "shear";  // shear | elsasser_aligned | single_mode | random_spectrum
  double ic_amplitude = 1e-2;
  int ic_mode_m = 1;
  int ic_k1 = 1, ic_k2 = 0;
  double ic_alpha_low = 0.0;
  double ic_r_high = 4.0;
  double ic_crossover = 1.0;
  uint64_t ic_seed = 1;
  double ic_decay_epsilon = 0.0;    // > 0: derive alpha_low = min(2 eps - 1, 0)
  double ic_calibrate_hs = 0.0;     // > 0: rescale so ||(u,b)||_{H^s} hits this

  // [solver]
  SolverOptions solver;

  // [diagnostics]
  DiagnosticsParams diag;
  int cadence = 10;
  double fit_t0 = -1.0;  // < 0: t_end / 4
  double fit_t1 = -1.0;  // < 0: 3 t_end / 4

  // [output]
  std::string out_dir = "out";
  bool write_csv = true;
  int snapshot_every = 0;   // records between state snapshots (0 = initial/final only)
  bool store_states = true;
  int checkpoint_every = 0;  // records between checkpoint writes (0 = off)

  Grid grid() const { return Grid(n, box_length); }
  ICSpec ic_spec() const;
  RunOptions run_options() const;
  std::pair<double, double> fit_window() const;
};

std::string serialize_config(const SimConfig& config);

struct ConfigParseResult {
  std::optional<SimConfig> config;        // set only when errors is empty
  std::vector<std::string> errors;        // every violation, not just the first
};

ConfigParseResult parse_config(const std::string& text);
SimConfig parse_config_or_throw(const std::string& text);
SimConfig load_config_file(const std::string& path);

/// FNV-1a hash of the canonical serialization; stamped into every artifact.
std::string config_hash(const SimConfig& config);

}  // namespace mhd2d
