#include "mhd2d/run.hpp"

#include <cmath>
#include <filesystem>
#include <stdexcept>

#include "mhd2d/norms.hpp"

namespace mhd2d {

void RunOptions::validate(long long n_steps) const {
  if (cadence < 1) throw std::invalid_argument("RunOptions: cadence must be >= 1");
  if (n_steps % cadence != 0)
    throw std::invalid_argument("RunOptions: step count must be a multiple of the cadence");
  if (checkpoint_every < 0) throw std::invalid_argument("RunOptions: checkpoint_every < 0");
  if (checkpoint_every > 0 && checkpoint_path.empty())
    throw std::invalid_argument("RunOptions: checkpointing enabled without a path");
}

std::vector<double> cumulative_integral(const std::vector<double>& f, double h) {
  const size_t n = f.size();
  std::vector<double> cum(n, 0.0);
  if (n < 2) return cum;
  if (n < 4) {
    for (size_t i = 1; i < n; ++i) cum[i] = cum[i - 1] + 0.5 * h * (f[i - 1] + f[i]);
    return cum;
  }
  const size_t last = n - 2;  // slice index of the final slice
  for (size_t j = 0; j + 1 < n; ++j) {
    double slice;
    if (j == 0) {
      slice = h / 24.0 * (9.0 * f[0] + 19.0 * f[1] - 5.0 * f[2] + f[3]);
    } else if (j == last) {
      slice = h / 24.0 * (f[j - 2] - 5.0 * f[j - 1] + 19.0 * f[j] + 9.0 * f[j + 1]);
    } else {
      slice = h / 24.0 * (-f[j - 1] + 13.0 * f[j] + 13.0 * f[j + 1] - f[j + 2]);
    }
    cum[j + 1] = cum[j] + slice;
  }
  return cum;
}

namespace {

double dissipation(const MHDState& state) {
  const double du = norm_grad_l2(state.u), db = norm_grad_l2(state.b);
  return du * du + db * db;
}

long long step_count(double span, double dt) {
  const long long n = std::llround(span / dt);
  if (std::abs(n * dt - span) > 1e-9 * std::max(1.0, std::abs(span)))
    throw std::invalid_argument("run: time span must be an integer number of steps");
  if (n < 0) throw std::invalid_argument("run: negative time span");
  return n;
}

Trajectory run_loop(MHDState state, const SolverOptions& solver, const RunOptions& options,
                    const DiagnosticsParams& diag, uint64_t start_step, double base_cum,
                    double initial_energy) {
  // initial_energy < 0 means "take E(0) from the first record"; restarts pass
  // the stored original value instead
  diag.validate();
  solver.validate();
  const long long n_steps = step_count(solver.t_end - state.time, solver.dt);
  options.validate(n_steps);

  Trajectory traj(state.grid());
  traj.solver = solver;
  traj.diag = diag;

  const Stepper stepper(state.grid(), solver);
  std::vector<double> dvec;
  dvec.reserve(static_cast<size_t>(n_steps) + 1);
  std::vector<size_t> record_steps;  // local step index of each record

  auto emit_record = [&](const MHDState& s, size_t local_step) {
    traj.records.push_back(make_record(s, diag));
    record_steps.push_back(local_step);
    if (options.store_states) traj.states.push_back(s);
  };

  auto finalize = [&]() {
    const std::vector<double> cum = cumulative_integral(dvec, solver.dt);
    for (size_t r = 0; r < traj.records.size(); ++r) {
      traj.records[r].cumulative_dissipation = base_cum + cum[record_steps[r]];
      traj.records[r].energy_residual = traj.records[r].energy() +
                                        2.0 * traj.records[r].cumulative_dissipation -
                                        initial_energy;
    }
  };

  dvec.push_back(dissipation(state));
  emit_record(state, 0);
  if (initial_energy < 0.0) initial_energy = traj.records.front().energy();

  for (long long i = 1; i <= n_steps; ++i) {
    try {
      state = stepper.step(state);
    } catch (const std::exception&) {
      // flush what we have before propagating the failure
      finalize();
      if (!options.abort_dump_dir.empty()) {
        std::filesystem::create_directories(options.abort_dump_dir);
        write_records_csv(options.abort_dump_dir + "/partial_series.csv", traj.records);
        write_state_snapshot(options.abort_dump_dir + "/abort_state.bin", state);
      }
      throw;
    }

    const bool at_record = (i % options.cadence) == 0;
    // global record index, so the checkpoint rhythm survives a restart
    const long long record_index = (static_cast<long long>(start_step) + i) / options.cadence;
    const bool at_checkpoint =
        at_record && options.checkpoint_every > 0 && (record_index % options.checkpoint_every) == 0;

    std::vector<Eigen::ArrayXXd> checkpoint_fields;
    if (at_checkpoint) checkpoint_fields = sync_through_physical(state);
    dvec.push_back(dissipation(state));

    if (at_record) {
      emit_record(state, static_cast<size_t>(i));
      if (at_checkpoint) {
        CheckpointMeta meta;
        meta.step_index = start_step + static_cast<uint64_t>(i);
        meta.options = solver;
        meta.cumulative_dissipation =
            base_cum + cumulative_integral(dvec, solver.dt).back();
        meta.dissipation_prev = dvec[dvec.size() - 2];
        meta.initial_energy = initial_energy;
        write_checkpoint_fields(options.checkpoint_path, state.grid(), state.time,
                                checkpoint_fields, meta);
      }
    }
  }

  finalize();
  return traj;
}

}  // namespace

Trajectory run(const MHDState& ic, const SolverOptions& solver, const RunOptions& options,
               const DiagnosticsParams& diag) {
  return run_loop(ic, solver, options, diag, 0, 0.0, -1.0);
}

Trajectory run_restart(const std::string& checkpoint_path, const RunOptions& options,
                       const DiagnosticsParams& diag, std::optional<double> t_end_override) {
  auto [state, meta] = read_checkpoint(checkpoint_path);
  if (t_end_override) meta.options.t_end = *t_end_override;
  return run_loop(std::move(state), meta.options, options, diag, meta.step_index,
                  meta.cumulative_dissipation, meta.initial_energy);
}

}  // namespace mhd2d
