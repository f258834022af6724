#include "mhd2d/snapshot.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace mhd2d {

static_assert(std::endian::native == std::endian::little,
              "snapshot format is little-endian; this build targets little-endian hosts");

namespace {

constexpr char kMagic[4] = {'M', 'H', 'D', '2'};
constexpr char kMetaMagic[4] = {'M', 'E', 'T', 'A'};
constexpr uint32_t kVersion = 1;

template <typename T>
void put(std::ostream& os, const T& value) {
  os.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T get(std::istream& is) {
  T value{};
  is.read(reinterpret_cast<char*>(&value), sizeof(T));
  if (!is) throw std::runtime_error("snapshot: truncated file");
  return value;
}

void write_field_row_major(std::ostream& os, const Eigen::ArrayXXd& f) {
  const int n = static_cast<int>(f.rows());
  std::vector<double> row(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) row[j] = f(i, j);
    os.write(reinterpret_cast<const char*>(row.data()), sizeof(double) * n);
  }
}

Eigen::ArrayXXd read_field_row_major(std::istream& is, int n) {
  Eigen::ArrayXXd f(n, n);
  std::vector<double> row(n);
  for (int i = 0; i < n; ++i) {
    is.read(reinterpret_cast<char*>(row.data()), sizeof(double) * n);
    if (!is) throw std::runtime_error("snapshot: truncated field data");
    for (int j = 0; j < n; ++j) f(i, j) = row[j];
  }
  return f;
}

void write_header(std::ostream& os, const Grid& grid, double time, uint32_t field_count) {
  os.write(kMagic, 4);
  put(os, kVersion);
  put(os, static_cast<uint32_t>(grid.n()));
  put(os, grid.box_length());
  put(os, time);
  put(os, field_count);
}

Snapshot read_body(std::istream& is) {
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, kMagic, 4) != 0)
    throw std::runtime_error("snapshot: bad magic (not an MHD2 file)");
  const uint32_t version = get<uint32_t>(is);
  if (version != kVersion) throw std::runtime_error("snapshot: unsupported version");
  Snapshot snap;
  snap.n = static_cast<int>(get<uint32_t>(is));
  snap.box_length = get<double>(is);
  snap.time = get<double>(is);
  const uint32_t count = get<uint32_t>(is);
  snap.fields.reserve(count);
  for (uint32_t f = 0; f < count; ++f) snap.fields.push_back(read_field_row_major(is, snap.n));
  return snap;
}

}  // namespace

void write_snapshot(const std::string& path, const Grid& grid, double time,
                    const std::vector<Eigen::ArrayXXd>& fields) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("snapshot: cannot open " + path + " for writing");
  write_header(os, grid, time, static_cast<uint32_t>(fields.size()));
  for (const auto& f : fields) {
    if (f.rows() != grid.n() || f.cols() != grid.n())
      throw std::invalid_argument("snapshot: field shape does not match grid");
    write_field_row_major(os, f);
  }
  if (!os) throw std::runtime_error("snapshot: write failed for " + path);
}

Snapshot read_snapshot(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("snapshot: cannot open " + path);
  return read_body(is);
}

void write_state_snapshot(const std::string& path, const MHDState& state) {
  write_snapshot(path, state.grid(), state.time,
                 {state.u.c1.to_physical(), state.u.c2.to_physical(), state.b.c1.to_physical(),
                  state.b.c2.to_physical()});
}

namespace {
MHDState state_from_snapshot(const Snapshot& snap) {
  if (snap.fields.size() != 4)
    throw std::runtime_error("snapshot: expected 4 fields (u1, u2, b1, b2)");
  const Grid grid = snap.grid();
  VectorField u(SpectralField::from_physical(grid, snap.fields[0]),
                SpectralField::from_physical(grid, snap.fields[1]));
  VectorField b(SpectralField::from_physical(grid, snap.fields[2]),
                SpectralField::from_physical(grid, snap.fields[3]));
  return MHDState(std::move(u), std::move(b), snap.time);
}
}  // namespace

MHDState read_state_snapshot(const std::string& path) {
  return state_from_snapshot(read_snapshot(path));
}

void write_checkpoint_fields(const std::string& path, const Grid& grid, double time,
                             const std::vector<Eigen::ArrayXXd>& fields,
                             const CheckpointMeta& meta) {
  if (fields.size() != 4) throw std::invalid_argument("checkpoint: expected 4 fields");
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("checkpoint: cannot open " + path + " for writing");
  write_header(os, grid, time, 4);
  for (const Eigen::ArrayXXd& f : fields) write_field_row_major(os, f);
  os.write(kMetaMagic, 4);
  put(os, meta.step_index);
  put(os, static_cast<uint32_t>(meta.options.scheme));
  put(os, static_cast<uint32_t>(meta.options.mode));
  put(os, meta.options.dt);
  put(os, meta.options.t_end);
  put(os, meta.options.eps_reg);
  put(os, static_cast<uint8_t>(meta.options.dealias));
  put(os, static_cast<uint8_t>(meta.options.linear_only));
  put(os, meta.cumulative_dissipation);
  put(os, meta.dissipation_prev);
  put(os, meta.initial_energy);
  if (!os) throw std::runtime_error("checkpoint: write failed for " + path);
}

void write_checkpoint(const std::string& path, const MHDState& state, const CheckpointMeta& meta) {
  write_checkpoint_fields(path, state.grid(), state.time,
                          {state.u.c1.to_physical(), state.u.c2.to_physical(),
                           state.b.c1.to_physical(), state.b.c2.to_physical()},
                          meta);
}

std::pair<MHDState, CheckpointMeta> read_checkpoint(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("checkpoint: cannot open " + path);
  Snapshot snap = read_body(is);
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, kMetaMagic, 4) != 0)
    throw std::runtime_error("checkpoint: missing META block (plain snapshot?)");
  CheckpointMeta meta;
  meta.step_index = get<uint64_t>(is);
  meta.options.scheme = static_cast<Scheme>(get<uint32_t>(is));
  meta.options.mode = static_cast<RhsMode>(get<uint32_t>(is));
  meta.options.dt = get<double>(is);
  meta.options.t_end = get<double>(is);
  meta.options.eps_reg = get<double>(is);
  meta.options.dealias = get<uint8_t>(is) != 0;
  meta.options.linear_only = get<uint8_t>(is) != 0;
  meta.cumulative_dissipation = get<double>(is);
  meta.dissipation_prev = get<double>(is);
  meta.initial_energy = get<double>(is);
  return {state_from_snapshot(snap), meta};
}

std::vector<Eigen::ArrayXXd> sync_through_physical(MHDState& state) {
  const Grid& g = state.grid();
  std::vector<Eigen::ArrayXXd> phys;
  phys.reserve(4);
  for (SpectralField* f : {&state.u.c1, &state.u.c2, &state.b.c1, &state.b.c2}) {
    phys.push_back(f->to_physical());
    *f = SpectralField::from_physical(g, phys.back());
  }
  return phys;
}

}  // namespace mhd2d
