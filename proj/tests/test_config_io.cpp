#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>

#include "mhd2d/config.hpp"
#include "mhd2d/snapshot.hpp"
#include "test_support.hpp"

using namespace mhd2d;
using namespace mhd2d::testing;

TEST_CASE("config: minimal text gets defaults and round-trips losslessly") {
  const std::string minimal = R"(
schema_version = 1
[grid]
n = 64
[solver]
t_end = 2.0
)";
  ConfigParseResult res = parse_config(minimal);
  REQUIRE(res.errors.empty());
  REQUIRE(res.config.has_value());
  CHECK(res.config->n == 64);
  CHECK(res.config->box_length == doctest::Approx(kTwoPi));
  CHECK(res.config->solver.t_end == 2.0);
  CHECK(res.config->diag.s == 2.5);

  const std::string canon = serialize_config(*res.config);
  SimConfig reparsed = parse_config_or_throw(canon);
  CHECK(serialize_config(reparsed) == canon);
  CHECK(config_hash(reparsed) == config_hash(*res.config));
}

TEST_CASE("config: hypothesis gates produce targeted messages") {
  SimConfig base;
  base.diag.s = 1.5;
  ConfigParseResult res = parse_config(serialize_config(base));
  REQUIRE_FALSE(res.errors.empty());
  bool found = false;
  for (const auto& e : res.errors)
    if (e.find("s > 2") != std::string::npos) found = true;
  CHECK(found);

  base.diag.s = 2.5;
  base.diag.eps = 1.3;
  res = parse_config(serialize_config(base));
  REQUIRE_FALSE(res.errors.empty());
  CHECK(res.errors.front().find("(0, 1)") != std::string::npos);
}

TEST_CASE("config: unknown keys are errors and all violations are reported") {
  const std::string bad = R"(
schema_version = 1
[grid]
n = 12
mystery_knob = 3
[solver]
dt = -1
[diagnostics]
s = 1.0
eps = 2.0
)";
  ConfigParseResult res = parse_config(bad);
  CHECK_FALSE(res.config.has_value());
  CHECK(res.errors.size() >= 4);  // unknown key, bad n, bad dt, bad s, bad eps
  bool unknown = false;
  for (const auto& e : res.errors)
    if (e.find("unknown key 'grid.mystery_knob'") != std::string::npos) unknown = true;
  CHECK(unknown);
}

TEST_CASE("config: ic spec derivation honors the decay-epsilon map") {
  SimConfig c;
  c.ic_kind = "random_spectrum";
  c.ic_decay_epsilon = 0.3;
  c.ic_alpha_low = 123.0;  // overridden by the epsilon map
  ICSpec spec = c.ic_spec();
  CHECK(spec.alpha_low == doctest::Approx(-0.4));
  c.ic_decay_epsilon = 0.0;
  CHECK(c.ic_spec().alpha_low == doctest::Approx(123.0));
}

TEST_CASE("config: hash is sensitive to any field change") {
  SimConfig a;
  SimConfig b = a;
  b.ic_seed = 999;
  CHECK(config_hash(a) != config_hash(b));
  SimConfig c = a;
  c.solver.dt *= 2;
  CHECK(config_hash(a) != config_hash(c));
}

TEST_CASE("snapshot: bit-exact round trip") {
  namespace fs = std::filesystem;
  const std::string path = fs::temp_directory_path() / "mhd2d_snap_test.bin";
  const Grid g(32, 3.0);
  MHDState st = random_state(Grid(32, kTwoPi), 5, 0.3);
  // move to a non-default box to exercise the header
  MHDState odd(VectorField(SpectralField(g, st.u.c1.coeffs(), true),
                           SpectralField(g, st.u.c2.coeffs(), true)),
               VectorField(SpectralField(g, st.b.c1.coeffs(), true),
                           SpectralField(g, st.b.c2.coeffs(), true)),
               1.25);
  write_state_snapshot(path, odd);
  MHDState back = read_state_snapshot(path);
  CHECK(back.time == 1.25);
  CHECK(back.grid() == g);

  // file payload identical bit for bit to what was serialized
  Snapshot raw = read_snapshot(path);
  CHECK(raw.fields.size() == 4);
  CHECK((raw.fields[0] == odd.u.c1.to_physical()).all());
  CHECK((raw.fields[3] == odd.b.c2.to_physical()).all());
  write_snapshot(path, g, 1.25, raw.fields);
  Snapshot raw2 = read_snapshot(path);
  for (int f = 0; f < 4; ++f) CHECK((raw2.fields[f] == raw.fields[f]).all());
  fs::remove(path);
}

TEST_CASE("snapshot: malformed files are rejected") {
  namespace fs = std::filesystem;
  const std::string path = fs::temp_directory_path() / "mhd2d_bad_snap.bin";
  {
    std::ofstream os(path, std::ios::binary);
    os << "NOPE and some bytes";
  }
  CHECK_THROWS(read_snapshot(path));
  CHECK_THROWS(read_snapshot("/nonexistent/path/snap.bin"));
  fs::remove(path);
}

TEST_CASE("checkpoint: metadata survives the file") {
  namespace fs = std::filesystem;
  const std::string path = fs::temp_directory_path() / "mhd2d_ckpt_test.bin";
  MHDState st = random_state(Grid(32, kTwoPi), 6, 0.3);
  CheckpointMeta meta;
  meta.step_index = 1234;
  meta.options.dt = 2.5e-3;
  meta.options.t_end = 7.0;
  meta.options.scheme = Scheme::ifrk4;
  meta.options.mode = RhsMode::regularized;
  meta.options.eps_reg = 0.125;
  meta.options.dealias = false;
  meta.options.linear_only = true;
  meta.cumulative_dissipation = 0.625;
  meta.dissipation_prev = 0.5;
  meta.initial_energy = 2.0;
  write_checkpoint(path, st, meta);
  auto [state, back] = read_checkpoint(path);
  CHECK(back.step_index == 1234);
  CHECK(back.options.dt == 2.5e-3);
  CHECK(back.options.t_end == 7.0);
  CHECK(back.options.scheme == Scheme::ifrk4);
  CHECK(back.options.mode == RhsMode::regularized);
  CHECK(back.options.eps_reg == 0.125);
  CHECK_FALSE(back.options.dealias);
  CHECK(back.options.linear_only);
  CHECK(back.cumulative_dissipation == 0.625);
  CHECK(back.initial_energy == 2.0);

  // a plain snapshot is not a checkpoint
  write_state_snapshot(path, st);
  CHECK_THROWS(read_checkpoint(path));
  fs::remove(path);
}

TEST_CASE("csv: ledger round trip preserves every column") {
  namespace fs = std::filesystem;
  const std::string path = fs::temp_directory_path() / "mhd2d_csv_test.csv";
  std::vector<DiagnosticsRecord> records;
  for (int i = 0; i < 5; ++i) {
    DiagnosticsRecord r;
    r.time = 0.1 * i;
    r.l2_u = 1.0 / (1 + i);
    r.l2_b = 0.5 / (1 + i);
    r.grad_l2_u = 2.0 / (1 + i);
    r.grad_l2_b = 0.25;
    r.hs = 3.0;
    r.hdot_neg = 0.125;
    r.low_freq_energy = 1e-3 * i;
    r.low_freq_modes = i;
    r.g_value = g_split(r.time);
    r.energy_residual = 1e-12 * i;
    records.push_back(r);
  }
  write_records_csv(path, records);
  const auto back = read_records_csv(path);
  REQUIRE(back.size() == records.size());
  for (size_t i = 0; i < records.size(); ++i) {
    CHECK(back[i].time == records[i].time);
    CHECK(back[i].l2_u == records[i].l2_u);
    CHECK(back[i].l2_b == records[i].l2_b);
    CHECK(back[i].grad_l2_u == records[i].grad_l2_u);
    CHECK(back[i].grad_l2_b == records[i].grad_l2_b);
    CHECK(back[i].hs == records[i].hs);
    CHECK(back[i].hdot_neg == records[i].hdot_neg);
    CHECK(back[i].low_freq_energy == records[i].low_freq_energy);
    CHECK(back[i].g_value == records[i].g_value);
    CHECK(back[i].energy_residual == records[i].energy_residual);
  }
  fs::remove(path);
}
