#include "mhd2d/mollifier.hpp"

#include "mhd2d/threads.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <tuple>
#include <vector>

namespace mhd2d {
namespace {

struct Rule {
  std::vector<double> x;  // nodes on [0,1]
  std::vector<double> w;
};

// Gauss-Legendre on [0,1]; nodes by Newton iteration on P_n.
Rule gauss_legendre(int n) {
  Rule r;
  r.x.resize(n);
  r.w.resize(n);
  for (int i = 0; i < n; ++i) {
    double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double t_prev, dp = 0.0;
    do {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2 * j + 1) * t * p1 - j * p2) / (j + 1);
      }
      dp = n * (t * p0 - p1) / (t * t - 1.0);
      t_prev = t;
      t = t_prev - p0 / dp;
    } while (std::fabs(t - t_prev) > 1e-15);
    r.x[i] = 0.5 * (1.0 + t);
    r.w[i] = 1.0 / ((1.0 - t * t) * dp * dp);
  }
  return r;
}

const Rule& rule_for(int nodes) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<Rule>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(nodes);
  if (it == cache.end())
    it = cache.emplace(nodes, std::make_unique<Rule>(gauss_legendre(nodes))).first;
  return *it->second;
}

double bump(double r) {
  const double q = 1.0 - r * r;
  return q > 1e-14 ? std::exp(-1.0 / q) : 0.0;
}

// integral_0^1 bump(r) J0(s r) r dr; node count tracks the oscillation of J0.
double bump_integral(double s, int nodes) {
  const Rule& r = rule_for(nodes);
  double acc = 0.0;
  for (size_t i = 0; i < r.x.size(); ++i)
    acc += r.w[i] * bump(r.x[i]) * std::cyl_bessel_j(0.0, s * r.x[i]) * r.x[i];
  return acc;
}

// integrand is C-infinity with all derivatives vanishing at r = 1, so the rule
// converges superalgebraically; node count tracks the J0 oscillation, quantized
// so cached rules are reused
int nodes_for(double s) {
  const int raw = 64 + static_cast<int>(s / 3.0);
  const int quantized = 32 * ((raw + 31) / 32);
  return std::min(quantized, 2048);
}

}  // namespace

double Mollifier::bump_transform(double s) {
  if (s == 0.0) return 1.0;
  static const double norm = bump_integral(0.0, nodes_for(0.0));
  return bump_integral(std::abs(s), nodes_for(std::abs(s))) / norm;
}

Mollifier::Mollifier(const Grid& grid, double eps) : grid_(grid), eps_(eps) {
  const double L = grid.box_length();
  if (!(eps > 0.0)) throw std::invalid_argument("Mollifier: eps must be positive");
  if (eps >= 0.25 * L)
    throw std::invalid_argument("Mollifier: eps must be below L/4, kernel would wrap the torus");

  // Evaluate the transform once per distinct integer shell k1^2 + k2^2.
  const int n = grid.n();
  std::map<long long, double> shell;
  for (int j = 0; j < n; ++j) {
    const long long kj = grid.wave_index(j);
    for (int i = 0; i < n; ++i) {
      const long long ki = grid.wave_index(i);
      shell.emplace(ki * ki + kj * kj, 0.0);
    }
  }
  const double scale = eps * kTwoPi / L;
  {
    std::vector<std::map<long long, double>::iterator> items;
    items.reserve(shell.size());
    for (auto it = shell.begin(); it != shell.end(); ++it) items.push_back(it);
    bump_transform(0.0);  // warm the normalization constant before forking
    const int workers = std::min(worker_count(), static_cast<int>(items.size()));
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w]() {
        for (size_t idx = w; idx < items.size(); idx += workers)
          items[idx]->second =
              bump_transform(scale * std::sqrt(static_cast<double>(items[idx]->first)));
      });
    }
    for (auto& t : pool) t.join();
  }
  shell[0] = 1.0;  // unit mass, exactly

  multiplier_.resize(n, n);
  for (int j = 0; j < n; ++j) {
    const long long kj = grid.wave_index(j);
    for (int i = 0; i < n; ++i) {
      const long long ki = grid.wave_index(i);
      multiplier_(i, j) = shell.at(ki * ki + kj * kj);
    }
  }
}

SpectralField Mollifier::apply(const SpectralField& f) const {
  if (f.grid() != grid_) throw std::invalid_argument("Mollifier: grid mismatch");
  return SpectralField(grid_, f.coeffs() * multiplier_.cast<Complex>(), f.real_flag());
}

VectorField Mollifier::apply(const VectorField& v) const {
  return VectorField(apply(v.c1), apply(v.c2));
}

namespace {
const Mollifier& cached_mollifier(const Grid& grid, double eps) {
  static std::mutex mu;
  static std::map<std::tuple<int, double, double>, std::unique_ptr<Mollifier>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(grid.n(), grid.box_length(), eps);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, std::make_unique<Mollifier>(grid, eps)).first;
  return *it->second;
}
}  // namespace

SpectralField mollify(const SpectralField& f, double eps) {
  return cached_mollifier(f.grid(), eps).apply(f);
}

VectorField mollify(const VectorField& v, double eps) {
  return cached_mollifier(v.grid(), eps).apply(v);
}

}  // namespace mhd2d
