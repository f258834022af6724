#include "mhd2d/ineq.hpp"

#include <algorithm>
#include <cstdio>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "mhd2d/norms.hpp"
#include "mhd2d/operators.hpp"
#include "mhd2d/rng.hpp"
#include "mhd2d/threads.hpp"

namespace mhd2d {

namespace {

void parallel_for(int count, const std::function<void(int)>& body) {
  const int workers = std::min(worker_count(), count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::exception_ptr first_error;
  std::mutex error_mu;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      try {
        for (int i = w; i < count; i += workers) body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

void validate_corpus(const CorpusSpec& spec, const char* who) {
  const Grid grid = spec.grid();
  if (spec.k_gen < 1 || spec.k_gen > grid.dealias_limit() / 2)
    throw std::invalid_argument(std::string(who) +
                                ": k_gen must lie in [1, n_dealias/2] so quadratic products "
                                "stay alias-free (k_gen <= " +
                                std::to_string(grid.dealias_limit() / 2) + " at this n)");
  if (spec.samples < 100)
    throw std::invalid_argument(std::string(who) + ": at least 100 corpus samples required");
}

struct Sample {
  double ratio = 0.0;
  bool trivial = false;
};

InequalityReport reduce(const std::string& name, const std::vector<Sample>& samples,
                        const std::vector<uint64_t>& seeds) {
  InequalityReport rep;
  rep.name = name;
  rep.samples = static_cast<int>(samples.size());
  std::vector<double> ratios;
  for (size_t i = 0; i < samples.size(); ++i) {
    if (samples[i].trivial) {
      ++rep.trivial;
      continue;
    }
    ratios.push_back(samples[i].ratio);
    if (samples[i].ratio > rep.max_ratio) {
      rep.max_ratio = samples[i].ratio;
      rep.worst_case_seed = seeds[i];
    }
  }
  if (ratios.empty()) return rep;
  std::sort(ratios.begin(), ratios.end());
  for (size_t q = 0; q < kQuantileProbs.size(); ++q) {
    const double pos = kQuantileProbs[q] * (ratios.size() - 1);
    const size_t lo = static_cast<size_t>(pos);
    const size_t hi = std::min(lo + 1, ratios.size() - 1);
    rep.quantiles[q] = ratios[lo] + (pos - lo) * (ratios[hi] - ratios[lo]);
  }
  return rep;
}

double decay_rate_for(const CorpusSpec& spec, int index) {
  return spec.decay_rates[static_cast<size_t>(index) % spec.decay_rates.size()];
}

// dealiased pointwise product
SpectralField product(const SpectralField& u, const SpectralField& v) {
  SpectralField p =
      SpectralField::from_physical(u.grid(), u.to_physical() * v.to_physical());
  dealias_in_place(p);
  return p;
}

double grad_lp(const SpectralField& f, double p) {
  const Grid& g = f.grid();
  const Eigen::ArrayXXd d1 = differentiate(f, 1).to_physical();
  const Eigen::ArrayXXd d2 = differentiate(f, 2).to_physical();
  const Eigen::ArrayXXd mag = (d1.square() + d2.square()).sqrt();
  const double cell = (g.box_length() * g.box_length()) / (static_cast<double>(g.n()) * g.n());
  return std::pow((mag.pow(p) * cell).sum(), 1.0 / p);
}

Sample ratio_of(double lhs, double rhs) {
  if (rhs == 0.0) {
    if (lhs > 1e-14) throw std::logic_error("inequality harness: zero bound, nonzero lhs");
    return {0.0, true};
  }
  return {lhs / rhs, false};
}

}  // namespace

uint64_t corpus_field_seed(const CorpusSpec& spec, int index, int component) {
  return spec.seed ^ (0x9e3779b97f4a7c15ull * static_cast<uint64_t>(index * 2 + component + 1));
}

SpectralField corpus_field(const Grid& grid, uint64_t field_seed, double decay_r, int k_gen,
                           bool spike) {
  if (k_gen > grid.dealias_limit() / 2)
    throw std::invalid_argument("corpus_field: k_gen too large for exact dealiased products");
  SpectralField f = SpectralField::zero(grid);
  const double q = kTwoPi / grid.box_length();
  for (int k1 = 0; k1 <= k_gen; ++k1) {
    for (int k2 = -k_gen; k2 <= k_gen; ++k2) {
      if (k1 == 0 && k2 <= 0) continue;
      ModeRng rng(field_seed, k1, k2);
      const double amp = std::pow(1.0 + q * q * (k1 * k1 + k2 * k2), -0.5 * decay_r);
      const Complex c = 0.5 * amp * Complex(rng.normal(), rng.normal());
      f.set_coeff(k1, k2, c);
      f.set_coeff(-k1, -k2, std::conj(c));
    }
  }
  if (spike) {
    // one loud top-shell mode: drives ||grad f||_p while ||f||_inf stays moderate
    ModeRng rng(field_seed, k_gen, -k_gen);
    const double theta = kTwoPi * rng.uniform();
    const Complex c = 4.0 * Complex(std::cos(theta), std::sin(theta));
    f.set_coeff(k_gen, k_gen, c);
    f.set_coeff(-k_gen, -k_gen, std::conj(c));
  }
  return f;
}

SpectralField commutator_field(double s, const SpectralField& u, const SpectralField& v) {
  if (u.grid() != v.grid()) throw std::invalid_argument("commutator_field: grid mismatch");
  if (unresolved_fraction(u) > 1e-8 || unresolved_fraction(v) > 1e-8)
    throw std::invalid_argument(
        "commutator_field: inputs are not spectrally resolved (top-third shell energy)");
  SpectralField lhs = lambda_s(product(u, v), s);
  lhs.coeffs() -= product(u, lambda_s(v, s)).coeffs();
  return lhs;
}

std::array<InequalityReport, 3> check_calculus(const CorpusSpec& spec, double s) {
  if (!(s > 1.0))
    throw std::invalid_argument("check_calculus: s must exceed 1 (= N/2 for the product bound)");
  validate_corpus(spec, "check_calculus");
  const Grid grid = spec.grid();
  std::vector<Sample> r1(spec.samples), r2(spec.samples), r3(spec.samples);
  std::vector<uint64_t> seeds(spec.samples);

  parallel_for(spec.samples, [&](int i) {
    const uint64_t su = corpus_field_seed(spec, i, 0);
    const uint64_t sv = corpus_field_seed(spec, i, 1);
    seeds[i] = su;
    const double r = decay_rate_for(spec, i);
    const SpectralField u = corpus_field(grid, su, r, spec.k_gen, false);
    const SpectralField v = corpus_field(grid, sv, decay_rate_for(spec, i + 1), spec.k_gen, false);

    const double u_inf = norm_linf(u), v_inf = norm_linf(v);
    const double u_hs = norm_hs(u, s), v_hs = norm_hs(v, s);
    const SpectralField uv = product(u, v);
    const double uv_hs = norm_hs(uv, s);

    r1[i] = ratio_of(uv_hs, u_inf * v_hs + u_hs * v_inf);
    r2[i] = ratio_of(uv_hs, u_hs * v_hs);

    const double lhs = norm_l2(commutator_field(s, u, v));
    const double grad_u_inf = norm_linf(gradient(u));
    r3[i] = ratio_of(lhs, u_hs * v_inf + grad_u_inf * norm_hs(v, s - 1.0));
  });

  return {reduce("product_hs", r1, seeds), reduce("product_hs_hs", r2, seeds),
          reduce("commutator", r3, seeds)};
}

std::pair<double, double> log_sobolev_sides(const SpectralField& f, double p) {
  if (!(p > 2.0)) throw std::invalid_argument("log_sobolev: requires 2 < p < infinity");
  if (std::abs(f.mean_mode()) > 1e-12 * f.coeffs().abs().maxCoeff())
    throw std::invalid_argument("log_sobolev: zero-mean field required");
  double lhs = 0.0;
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j) lhs += norm_linf(riesz_second(f, i, j));
  const double rhs =
      norm_l2(f) + norm_linf(f) * std::log(std::exp(1.0) + grad_lp(f, p));
  return {lhs, rhs};
}

InequalityReport check_log_sobolev(const CorpusSpec& spec, double p) {
  if (!(p > 2.0)) throw std::invalid_argument("check_log_sobolev: requires 2 < p < infinity");
  validate_corpus(spec, "check_log_sobolev");
  const Grid grid = spec.grid();
  std::vector<Sample> rs(spec.samples);
  std::vector<uint64_t> seeds(spec.samples);
  parallel_for(spec.samples, [&](int i) {
    const uint64_t sf = corpus_field_seed(spec, i, 0);
    seeds[i] = sf;
    const bool spike = (i % 4) == 3;  // near-saturating log-term family
    const SpectralField f = corpus_field(grid, sf, decay_rate_for(spec, i), spec.k_gen, spike);
    const auto [lhs, rhs] = log_sobolev_sides(f, p);
    rs[i] = ratio_of(lhs, rhs);
  });
  return reduce("log_sobolev", rs, seeds);
}

InequalityReport check_gn(const CorpusSpec& spec, double q) {
  if (!(q >= 2.0)) throw std::invalid_argument("check_gn: requires q >= 2");
  validate_corpus(spec, "check_gn");
  const Grid grid = spec.grid();
  std::vector<Sample> rs(spec.samples);
  std::vector<uint64_t> seeds(spec.samples);
  parallel_for(spec.samples, [&](int i) {
    const uint64_t sf = corpus_field_seed(spec, i, 0);
    seeds[i] = sf;
    const SpectralField f =
        corpus_field(grid, sf, decay_rate_for(spec, i), spec.k_gen, spec.spiky && (i % 4) == 3);
    const double lhs = std::pow(norm_lp(f, q), q);
    const double l2 = norm_l2(f);
    const double grad = norm_grad_l2(f);
    rs[i] = ratio_of(lhs, l2 * l2 * std::pow(grad, q - 2.0));
  });
  char name[64];
  std::snprintf(name, sizeof(name), "gagliardo_nirenberg_q%g", q);
  return reduce(name, rs, seeds);
}

}  // namespace mhd2d
