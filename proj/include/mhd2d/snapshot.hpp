#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mhd2d/spectral_field.hpp"
#include "mhd2d/stepper.hpp"

namespace mhd2d {

// Field snapshot file, little-endian binary:
//   magic "MHD2", version u32, n u32, L f64, time f64, field_count u32,
// then per field n*n f64 physical-space values in row-major order,
// values[i*n + j] = field(x1 = i*h, x2 = j*h). Round trips are bit-exact.

struct Snapshot {
  int n = 0;
  double box_length = 0.0;
  double time = 0.0;
  std::vector<Eigen::ArrayXXd> fields;
  Grid grid() const { return Grid(n, box_length); }
};

void write_snapshot(const std::string& path, const Grid& grid, double time,
                    const std::vector<Eigen::ArrayXXd>& fields);
Snapshot read_snapshot(const std::string& path);

/// State snapshot: fields u1, u2, b1, b2 in that order.
void write_state_snapshot(const std::string& path, const MHDState& state);
MHDState read_state_snapshot(const std::string& path);

/// Checkpoint: the state snapshot followed by a "META" integrator block, enough
/// to resume a run bit-exactly (see run_restart).
struct CheckpointMeta {
  uint64_t step_index = 0;
  SolverOptions options;
  double cumulative_dissipation = 0.0;  // integral of (|grad u|^2 + |grad b|^2) so far
  double dissipation_prev = 0.0;        // dissipation one step before the cut
  double initial_energy = 0.0;          // E(0) = ||u0||^2 + ||b0||^2
};

void write_checkpoint(const std::string& path, const MHDState& state, const CheckpointMeta& meta);
void write_checkpoint_fields(const std::string& path, const Grid& grid, double time,
                             const std::vector<Eigen::ArrayXXd>& fields,
                             const CheckpointMeta& meta);
std::pair<MHDState, CheckpointMeta> read_checkpoint(const std::string& path);

/// Replace each field by fft(ifft(field)) and return the intermediate physical
/// arrays: the exact round trip a snapshot-based restart performs. The running
/// state passes through this at every checkpoint write, and the file is written
/// from the returned arrays, so restarted and uninterrupted runs continue from
/// identical bits.
std::vector<Eigen::ArrayXXd> sync_through_physical(MHDState& state);

}  // namespace mhd2d
