#include "mhd2d/config.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace mhd2d {

ICSpec SimConfig::ic_spec() const {
  ICSpec spec(grid());
  if (ic_kind == "shear") spec.kind = ICSpec::Kind::shear;
  else if (ic_kind == "elsasser_aligned") spec.kind = ICSpec::Kind::elsasser_aligned;
  else if (ic_kind == "single_mode") spec.kind = ICSpec::Kind::single_mode;
  else if (ic_kind == "random_spectrum") spec.kind = ICSpec::Kind::random_spectrum;
  else throw std::invalid_argument("SimConfig: unknown ic kind '" + ic_kind + "'");
  spec.amplitude = ic_amplitude;
  spec.mode_m = ic_mode_m;
  spec.k1 = ic_k1;
  spec.k2 = ic_k2;
  spec.alpha_low = ic_decay_epsilon > 0.0 ? alpha_low_for_decay_epsilon(ic_decay_epsilon)
                                          : ic_alpha_low;
  spec.r_high = ic_r_high;
  spec.crossover = ic_crossover;
  spec.seed = ic_seed;
  return spec;
}

RunOptions SimConfig::run_options() const {
  RunOptions opts;
  opts.cadence = cadence;
  opts.store_states = store_states;
  opts.checkpoint_every = checkpoint_every;
  if (checkpoint_every > 0) opts.checkpoint_path = out_dir + "/checkpoint.bin";
  opts.abort_dump_dir = out_dir;
  return opts;
}

std::pair<double, double> SimConfig::fit_window() const {
  const double t0 = fit_t0 < 0.0 ? 0.25 * solver.t_end : fit_t0;
  const double t1 = fit_t1 < 0.0 ? 0.75 * solver.t_end : fit_t1;
  return {t0, t1};
}

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string scheme_name(Scheme s) { return s == Scheme::ifrk2 ? "ifrk2" : "ifrk4"; }
std::string mode_name(RhsMode m) { return m == RhsMode::exact ? "exact" : "regularized"; }

}  // namespace

std::string serialize_config(const SimConfig& c) {
  std::ostringstream os;
  os << "schema_version = " << c.schema_version << "\n\n";
  os << "[grid]\n";
  os << "n = " << c.n << "\n";
  os << "box_length = " << fmt(c.box_length) << "\n\n";
  os << "[ic]\n";
  os << "kind = " << c.ic_kind << "\n";
  os << "amplitude = " << fmt(c.ic_amplitude) << "\n";
  os << "mode_m = " << c.ic_mode_m << "\n";
  os << "k1 = " << c.ic_k1 << "\n";
  os << "k2 = " << c.ic_k2 << "\n";
  os << "alpha_low = " << fmt(c.ic_alpha_low) << "\n";
  os << "r_high = " << fmt(c.ic_r_high) << "\n";
  os << "crossover = " << fmt(c.ic_crossover) << "\n";
  os << "seed = " << c.ic_seed << "\n";
  os << "decay_epsilon = " << fmt(c.ic_decay_epsilon) << "\n";
  os << "calibrate_hs = " << fmt(c.ic_calibrate_hs) << "\n\n";
  os << "[solver]\n";
  os << "dt = " << fmt(c.solver.dt) << "\n";
  os << "t_end = " << fmt(c.solver.t_end) << "\n";
  os << "scheme = " << scheme_name(c.solver.scheme) << "\n";
  os << "mode = " << mode_name(c.solver.mode) << "\n";
  os << "eps_reg = " << fmt(c.solver.eps_reg) << "\n";
  os << "dealias = " << (c.solver.dealias ? "true" : "false") << "\n";
  os << "linear_only = " << (c.solver.linear_only ? "true" : "false") << "\n\n";
  os << "[diagnostics]\n";
  os << "cadence = " << c.cadence << "\n";
  os << "s = " << fmt(c.diag.s) << "\n";
  os << "eps = " << fmt(c.diag.eps) << "\n";
  os << "c1 = " << fmt(c.diag.c1) << "\n";
  os << "fit_t0 = " << fmt(c.fit_t0) << "\n";
  os << "fit_t1 = " << fmt(c.fit_t1) << "\n\n";
  os << "[output]\n";
  os << "directory = " << c.out_dir << "\n";
  os << "write_csv = " << (c.write_csv ? "true" : "false") << "\n";
  os << "snapshot_every = " << c.snapshot_every << "\n";
  os << "store_states = " << (c.store_states ? "true" : "false") << "\n";
  os << "checkpoint_every = " << c.checkpoint_every << "\n";
  return os.str();
}

namespace {

struct Parser {
  SimConfig config;
  std::vector<std::string> errors;

  void fail(int line_no, const std::string& message) {
    errors.push_back("line " + std::to_string(line_no) + ": " + message);
  }

  bool parse_double(const std::string& raw, double& out) {
    try {
      size_t used = 0;
      out = std::stod(raw, &used);
      return used == raw.size();
    } catch (...) {
      return false;
    }
  }
  bool parse_int(const std::string& raw, int& out) {
    try {
      size_t used = 0;
      out = std::stoi(raw, &used);
      return used == raw.size();
    } catch (...) {
      return false;
    }
  }
  bool parse_u64(const std::string& raw, uint64_t& out) {
    try {
      size_t used = 0;
      out = std::stoull(raw, &used);
      return used == raw.size();
    } catch (...) {
      return false;
    }
  }
  bool parse_bool(const std::string& raw, bool& out) {
    if (raw == "true") { out = true; return true; }
    if (raw == "false") { out = false; return true; }
    return false;
  }

  void assign(int line_no, const std::string& section, const std::string& key,
              const std::string& value) {
    SimConfig& c = config;
    auto num = [&](double& slot) {
      if (!parse_double(value, slot)) fail(line_no, "expected a number for " + key);
    };
    auto integer = [&](int& slot) {
      if (!parse_int(value, slot)) fail(line_no, "expected an integer for " + key);
    };
    auto boolean = [&](bool& slot) {
      if (!parse_bool(value, slot)) fail(line_no, "expected true/false for " + key);
    };

    const std::string full = section.empty() ? key : section + "." + key;
    if (full == "schema_version") {
      integer(c.schema_version);
    } else if (full == "grid.n") {
      integer(c.n);
    } else if (full == "grid.box_length") {
      num(c.box_length);
    } else if (full == "ic.kind") {
      c.ic_kind = value;
    } else if (full == "ic.amplitude") {
      num(c.ic_amplitude);
    } else if (full == "ic.mode_m") {
      integer(c.ic_mode_m);
    } else if (full == "ic.k1") {
      integer(c.ic_k1);
    } else if (full == "ic.k2") {
      integer(c.ic_k2);
    } else if (full == "ic.alpha_low") {
      num(c.ic_alpha_low);
    } else if (full == "ic.r_high") {
      num(c.ic_r_high);
    } else if (full == "ic.crossover") {
      num(c.ic_crossover);
    } else if (full == "ic.seed") {
      if (!parse_u64(value, c.ic_seed)) fail(line_no, "expected an unsigned integer for seed");
    } else if (full == "ic.decay_epsilon") {
      num(c.ic_decay_epsilon);
    } else if (full == "ic.calibrate_hs") {
      num(c.ic_calibrate_hs);
    } else if (full == "solver.dt") {
      num(c.solver.dt);
    } else if (full == "solver.t_end") {
      num(c.solver.t_end);
    } else if (full == "solver.scheme") {
      if (value == "ifrk2") c.solver.scheme = Scheme::ifrk2;
      else if (value == "ifrk4") c.solver.scheme = Scheme::ifrk4;
      else fail(line_no, "scheme must be ifrk2 or ifrk4");
    } else if (full == "solver.mode") {
      if (value == "exact") c.solver.mode = RhsMode::exact;
      else if (value == "regularized") c.solver.mode = RhsMode::regularized;
      else fail(line_no, "mode must be exact or regularized");
    } else if (full == "solver.eps_reg") {
      num(c.solver.eps_reg);
    } else if (full == "solver.dealias") {
      boolean(c.solver.dealias);
    } else if (full == "solver.linear_only") {
      boolean(c.solver.linear_only);
    } else if (full == "diagnostics.cadence") {
      integer(c.cadence);
    } else if (full == "diagnostics.s") {
      num(c.diag.s);
    } else if (full == "diagnostics.eps") {
      num(c.diag.eps);
    } else if (full == "diagnostics.c1") {
      num(c.diag.c1);
    } else if (full == "diagnostics.fit_t0") {
      num(c.fit_t0);
    } else if (full == "diagnostics.fit_t1") {
      num(c.fit_t1);
    } else if (full == "output.directory") {
      c.out_dir = value;
    } else if (full == "output.write_csv") {
      boolean(c.write_csv);
    } else if (full == "output.snapshot_every") {
      integer(c.snapshot_every);
    } else if (full == "output.store_states") {
      boolean(c.store_states);
    } else if (full == "output.checkpoint_every") {
      boolean_or_int(line_no, value, c.checkpoint_every);
    } else {
      fail(line_no, "unknown key '" + full + "'");
    }
  }

  void boolean_or_int(int line_no, const std::string& value, int& slot) {
    if (!parse_int(value, slot)) fail(line_no, "expected an integer for checkpoint_every");
  }

  void validate() {
    SimConfig& c = config;
    auto fail_v = [&](const std::string& m) { errors.push_back("config: " + m); };
    if (c.schema_version != 1) fail_v("unsupported schema_version (expected 1)");
    if (c.n < 8 || (c.n & (c.n - 1)) != 0) fail_v("grid.n must be a power of two with n >= 8");
    if (!(c.box_length > 0.0)) fail_v("grid.box_length must be positive");
    if (c.ic_kind != "shear" && c.ic_kind != "elsasser_aligned" && c.ic_kind != "single_mode" &&
        c.ic_kind != "random_spectrum")
      fail_v("ic.kind must be shear | elsasser_aligned | single_mode | random_spectrum");
    if (!(c.ic_amplitude > 0.0)) fail_v("ic.amplitude must be positive");
    if (!(c.ic_crossover > 0.0)) fail_v("ic.crossover must be positive");
    if (c.ic_decay_epsilon < 0.0 || c.ic_decay_epsilon >= 1.0)
      fail_v("ic.decay_epsilon must lie in [0, 1): the decay-rate hypothesis needs 0 < eps < 1");
    if (c.ic_calibrate_hs < 0.0) fail_v("ic.calibrate_hs must be nonnegative (0 disables)");
    if (!(c.solver.dt > 0.0)) fail_v("solver.dt must be positive");
    if (c.solver.t_end < 0.0) fail_v("solver.t_end must be nonnegative");
    if (c.solver.mode == RhsMode::regularized) {
      if (!(c.solver.eps_reg > 0.0)) fail_v("solver.eps_reg must be positive in regularized mode");
      if (c.solver.eps_reg >= 0.25 * c.box_length)
        fail_v("solver.eps_reg must be below box_length/4 (mollifier kernel must fit the box)");
    }
    if (c.cadence < 1) fail_v("diagnostics.cadence must be >= 1");
    if (!(c.diag.s > 2.0))
      fail_v("diagnostics.s = " + fmt(c.diag.s) +
             " rejected: the regularity monitor requires s > 2");
    if (!(c.diag.eps > 0.0 && c.diag.eps < 1.0))
      fail_v("diagnostics.eps must lie in (0, 1), the admissible negative-order range");
    if (!(c.diag.c1 > 0.0)) fail_v("diagnostics.c1 must be positive");
    if (c.fit_t0 >= 0.0 && c.fit_t1 >= 0.0 && !(c.fit_t0 < c.fit_t1))
      fail_v("diagnostics fit window must satisfy fit_t0 < fit_t1");
    if (c.snapshot_every < 0) fail_v("output.snapshot_every must be nonnegative");
    if (c.checkpoint_every < 0) fail_v("output.checkpoint_every must be nonnegative");
  }
};

}  // namespace

ConfigParseResult parse_config(const std::string& text) {
  Parser parser;
  std::istringstream is(text);
  std::string line, section;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto strip = [](std::string s) {
      const auto begin = s.find_first_not_of(" \t\r");
      if (begin == std::string::npos) return std::string();
      const auto end = s.find_last_not_of(" \t\r");
      return s.substr(begin, end - begin + 1);
    };
    line = strip(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        parser.fail(line_no, "malformed section header");
        continue;
      }
      section = line.substr(1, line.size() - 2);
      continue;
    }
    const size_t eq = line.find('=');
    if (eq == std::string::npos) {
      parser.fail(line_no, "expected key = value");
      continue;
    }
    const std::string key = strip(line.substr(0, eq));
    const std::string value = strip(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      parser.fail(line_no, "empty key or value");
      continue;
    }
    parser.assign(line_no, section, key, value);
  }
  parser.validate();

  ConfigParseResult result;
  result.errors = parser.errors;
  if (result.errors.empty()) result.config = parser.config;
  return result;
}

SimConfig parse_config_or_throw(const std::string& text) {
  ConfigParseResult result = parse_config(text);
  if (!result.config) {
    std::string joined = "invalid config:";
    for (const auto& e : result.errors) joined += "\n  " + e;
    throw std::invalid_argument(joined);
  }
  return *result.config;
}

SimConfig load_config_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("config: cannot open " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return parse_config_or_throw(ss.str());
}

std::string config_hash(const SimConfig& config) {
  const std::string text = serialize_config(config);
  uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace mhd2d
