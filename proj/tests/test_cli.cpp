// End-to-end exercises of the command-line surface, via subprocesses.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "mhd2d/diagnostics.hpp"

using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string cli_path() {
  const char* env = std::getenv("MHD2D_CLI");
  REQUIRE(env != nullptr);
  return env;
}

int run_cli(const std::string& args) {
  const std::string cmd = cli_path() + " " + args + " >/dev/null 2>&1";
  return std::system(cmd.c_str());
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("mhd2d_cli_" + tag);
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

void write_file(const std::string& path, const std::string& text) {
  std::ofstream os(path);
  os << text;
}

json load_json(const std::string& path) {
  std::ifstream is(path);
  REQUIRE(is.good());
  json j;
  is >> j;
  return j;
}

}  // namespace

TEST_CASE("cli run: shear ledger matches the exact decay law") {
  TempDir dir("run");
  write_file(dir / "shear.cfg", R"(
schema_version = 1
[grid]
n = 64
[ic]
kind = shear
amplitude = 1.0
[solver]
dt = 0.002
t_end = 1.0
[diagnostics]
cadence = 100
[output]
directory = )" + (dir / "out") + "\n");

  CHECK(run_cli("run --config " + (dir / "shear.cfg") + " --quiet") == 0);
  const auto records = mhd2d::read_records_csv(dir / "out/series.csv");
  REQUIRE(records.size() == 6);
  const double u0 = records.front().l2_u;
  for (const auto& r : records)
    CHECK(r.l2_u == doctest::Approx(u0 * std::exp(-r.time)).epsilon(1e-8));

  const json summary = load_json(dir / "out/summary.json");
  CHECK(summary["assertions_passed"].get<bool>());
  CHECK(summary["max_abs_energy_residual"].get<double>() < 1e-8);
  CHECK(fs::exists(dir / "out/state_final.bin"));
  CHECK(fs::exists(dir / "out/config_echo.txt"));
}

TEST_CASE("cli diag: synthetic power-law series recovers its exponent") {
  TempDir dir("diag");
  std::vector<mhd2d::DiagnosticsRecord> records;
  for (int i = 0; i <= 200; ++i) {
    mhd2d::DiagnosticsRecord r;
    r.time = 0.5 * i;
    const double v = std::pow(std::exp(1.0) + r.time, -0.5);
    r.l2_u = v;  // l2_pair = v with l2_b = 0
    r.low_freq_energy = v * v;
    r.low_freq_modes = 1;
    r.g_value = mhd2d::g_split(r.time);
    records.push_back(r);
  }
  mhd2d::write_records_csv(dir / "series.csv", records);
  CHECK(run_cli("diag --csv " + (dir / "series.csv") + " --quiet") == 0);
  const json rep = load_json(dir / "diag_report.json");
  CHECK(rep["decay_fit"]["kappa_hat"].get<double>() == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("cli ineq: q = 2 bound degenerates to ratio one") {
  TempDir dir("ineq");
  CHECK(run_cli("ineq --suite gn --n 64 --k-gen 10 --samples 100 --q 4 --out " + (dir / "r") +
                " --quiet") == 0);
  const json rep = load_json(dir / "r/ineq_gagliardo_nirenberg_q2.json");
  CHECK(rep["max_ratio"].get<double>() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(rep["samples"].get<int>() == 100);
}

TEST_CASE("cli run: checkpointed restart reproduces the one-shot run bit-exactly") {
  TempDir dir("restart");
  const std::string base = R"(
schema_version = 1
[grid]
n = 32
[ic]
kind = random_spectrum
amplitude = 0.4
r_high = 6.0
crossover = 2.0
seed = 91
[solver]
dt = 0.005
t_end = 0.5
[diagnostics]
cadence = 10
[output]
checkpoint_every = 5
)";
  write_file(dir / "full.cfg", base + "directory = " + (dir / "full") + "\n");
  write_file(dir / "half.cfg", base + "directory = " + (dir / "half") + "\n");

  CHECK(run_cli("run --config " + (dir / "full.cfg") + " --quiet") == 0);
  CHECK(run_cli("run --config " + (dir / "half.cfg") + " --t-end 0.25 --quiet") == 0);
  CHECK(run_cli("run --config " + (dir / "half.cfg") + " --restart " +
                (dir / "half/checkpoint.bin") + " --t-end 0.5 --quiet") == 0);

  std::ifstream a(dir / "full/state_final.bin", std::ios::binary);
  std::ifstream b(dir / "half/state_final.bin", std::ios::binary);
  std::ostringstream sa, sb;
  sa << a.rdbuf();
  sb << b.rdbuf();
  CHECK(sa.str() == sb.str());
}

TEST_CASE("cli: invalid config exits nonzero with the violation") {
  TempDir dir("bad");
  write_file(dir / "bad.cfg", "schema_version = 1\n[diagnostics]\ns = 1.5\n");
  CHECK(run_cli("run --config " + (dir / "bad.cfg")) != 0);
}
