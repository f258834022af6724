#pragma once

#include <optional>
#include <string>

#include "mhd2d/diagnostics.hpp"
#include "mhd2d/snapshot.hpp"

namespace mhd2d {

struct RunOptions {
  int cadence = 10;         // steps between diagnostics records
  bool store_states = true;  // keep sampled states in the Trajectory
  int checkpoint_every = 0;  // records between checkpoint writes (0 = off)
  std::string checkpoint_path;
  std::string abort_dump_dir;  // partial CSV + state dump on step failure

  void validate(long long n_steps) const;
};

/// Advance ic to t_end, recording diagnostics every cadence steps (the initial
/// state is always record 0). Deterministic for fixed inputs; when checkpoints
/// are enabled the state is synced through the snapshot round trip at each
/// write, so a later run_restart continues bit-exactly.
Trajectory run(const MHDState& ic, const SolverOptions& solver, const RunOptions& options,
               const DiagnosticsParams& diag);

/// Resume from a checkpoint written by run(); solver options come from the file,
/// with an optional fresh horizon.
Trajectory run_restart(const std::string& checkpoint_path, const RunOptions& options,
                       const DiagnosticsParams& diag,
                       std::optional<double> t_end_override = std::nullopt);

/// Cumulative integral of a uniformly sampled series by piecewise-cubic slices
/// (4-point interior rule, one-sided cubic rules at both ends; trapezoid for
/// fewer than 4 samples). Returns partial integrals at every sample index.
std::vector<double> cumulative_integral(const std::vector<double>& values, double h);

}  // namespace mhd2d
