#include "mhd2d/ic.hpp"

#include <cmath>
#include <stdexcept>

#include "mhd2d/norms.hpp"
#include "mhd2d/operators.hpp"
#include "mhd2d/rng.hpp"

namespace mhd2d {
namespace {

MHDState make_shear(const ICSpec& spec) {
  const Grid& g = spec.grid;
  if (spec.mode_m < 1 || spec.mode_m > g.dealias_limit())
    throw std::invalid_argument("make_ic: shear mode_m outside the resolved range");
  // u = (A sin(m q x2), 0): a single conjugate pair on the k1 = 0 axis.
  SpectralField u1 = SpectralField::zero(g);
  const Complex c(0.0, -0.5 * spec.amplitude);
  u1.set_coeff(0, spec.mode_m, c);
  u1.set_coeff(0, -spec.mode_m, std::conj(c));
  VectorField u(std::move(u1), SpectralField::zero(g));
  return MHDState(std::move(u), VectorField::zero(g), 0.0);
}

// u = (-d2 psi, d1 psi) for a sine-product stream function; peak speed ~ amplitude.
VectorField stream_sine_product(const Grid& g, int m, double amplitude) {
  const double q = kTwoPi / g.box_length() * m;
  SpectralField psi = SpectralField::zero(g);
  const double a = amplitude / q;
  // sin(m q x1) sin(m q x2) = -1/4 (e^{i(k,k)} + e^{-i(k,k)} - e^{i(k,-k)} - e^{-i(k,-k)})
  psi.set_coeff(m, m, Complex(-0.25 * a, 0.0));
  psi.set_coeff(-m, -m, Complex(-0.25 * a, 0.0));
  psi.set_coeff(m, -m, Complex(0.25 * a, 0.0));
  psi.set_coeff(-m, m, Complex(0.25 * a, 0.0));
  SpectralField u1 = differentiate(psi, 2);
  u1.coeffs() = -u1.coeffs();
  return VectorField(std::move(u1), differentiate(psi, 1));
}

MHDState make_elsasser(const ICSpec& spec) {
  const Grid& g = spec.grid;
  if (spec.mode_m < 1 || spec.mode_m > g.dealias_limit())
    throw std::invalid_argument("make_ic: elsasser mode_m outside the resolved range");
  VectorField u = stream_sine_product(g, spec.mode_m, spec.amplitude);
  VectorField b = u;
  return MHDState(std::move(u), std::move(b), 0.0);
}

MHDState make_single_mode(const ICSpec& spec) {
  const Grid& g = spec.grid;
  const int kmax = g.dealias_limit();
  if ((spec.k1 == 0 && spec.k2 == 0) || std::abs(spec.k1) > kmax || std::abs(spec.k2) > kmax)
    throw std::invalid_argument("make_ic: single_mode wave index outside the resolved range");
  const double q = kTwoPi / g.box_length();
  const double mag = std::hypot(q * spec.k1, q * spec.k2);
  // psi = (A/|xi|) sin(xi . x) => |u(x)| = A |cos(xi . x)|.
  SpectralField psi = SpectralField::zero(g);
  const Complex c(0.0, -0.5 * spec.amplitude / mag);
  psi.set_coeff(spec.k1, spec.k2, c);
  psi.set_coeff(-spec.k1, -spec.k2, std::conj(c));
  SpectralField u1 = differentiate(psi, 2);
  u1.coeffs() = -u1.coeffs();
  VectorField u(std::move(u1), differentiate(psi, 1));
  return MHDState(std::move(u), VectorField::zero(g), 0.0);
}

double envelope(double k, double alpha_low, double r_high, double crossover) {
  if (k <= 0.0) return 0.0;
  if (k <= crossover) return std::pow(k, alpha_low);
  return std::pow(crossover, alpha_low) * std::pow(k / crossover, -r_high);
}

SpectralField stream_from_spectrum(const Grid& g, const ICSpec& spec, int component_tag) {
  SpectralField psi = SpectralField::zero(g);
  const int kmax = g.dealias_limit();
  const double q = kTwoPi / g.box_length();
  for (int k1 = 0; k1 <= kmax; ++k1) {
    for (int k2 = -kmax; k2 <= kmax; ++k2) {
      if (k1 == 0 && k2 <= 0) continue;  // half-space; mirror fills the rest
      const double kmag = q * std::hypot(static_cast<double>(k1), static_cast<double>(k2));
      // velocity envelope divided by |xi|: u = perp-grad psi carries one extra |xi|
      const double amp = envelope(kmag, spec.alpha_low, spec.r_high, spec.crossover) / kmag;
      if (amp == 0.0) continue;
      ModeRng rng(spec.seed, k1, k2, component_tag);
      const double theta = kTwoPi * rng.uniform();
      const Complex c = 0.5 * amp * Complex(std::cos(theta), std::sin(theta));
      psi.set_coeff(k1, k2, c);
      psi.set_coeff(-k1, -k2, std::conj(c));
    }
  }
  return psi;
}

MHDState make_random_spectrum(const ICSpec& spec) {
  const Grid& g = spec.grid;
  if (!(spec.crossover > 0.0))
    throw std::invalid_argument("make_ic: crossover wavenumber must be positive");
  SpectralField psi_u = stream_from_spectrum(g, spec, 1);
  SpectralField psi_b = stream_from_spectrum(g, spec, 2);
  SpectralField u1 = differentiate(psi_u, 2);
  u1.coeffs() = -u1.coeffs();
  VectorField u(std::move(u1), differentiate(psi_u, 1));
  SpectralField b1 = differentiate(psi_b, 2);
  b1.coeffs() = -b1.coeffs();
  VectorField b(std::move(b1), differentiate(psi_b, 1));
  MHDState state(std::move(u), std::move(b), 0.0);

  const double norm = state_norm_l2(state);
  if (!std::isfinite(norm) || norm == 0.0)
    throw std::invalid_argument("make_ic: requested spectrum has no finite nonzero L2 norm");
  const double scale = spec.amplitude / norm;
  state.u.c1.coeffs() *= scale;
  state.u.c2.coeffs() *= scale;
  state.b.c1.coeffs() *= scale;
  state.b.c2.coeffs() *= scale;
  return state;
}

}  // namespace

MHDState make_ic(const ICSpec& spec) {
  if (!(spec.amplitude > 0.0)) throw std::invalid_argument("make_ic: amplitude must be positive");
  switch (spec.kind) {
    case ICSpec::Kind::shear: return make_shear(spec);
    case ICSpec::Kind::elsasser_aligned: return make_elsasser(spec);
    case ICSpec::Kind::single_mode: return make_single_mode(spec);
    case ICSpec::Kind::random_spectrum: return make_random_spectrum(spec);
  }
  throw std::logic_error("make_ic: bad kind");
}

MHDState amplitude_calibrate(const MHDState& state, double target_hs_norm, double s) {
  const double current = state_norm_hs(state, s);
  if (current == 0.0) throw std::invalid_argument("amplitude_calibrate: zero state");
  if (!(target_hs_norm > 0.0))
    throw std::invalid_argument("amplitude_calibrate: target must be positive");
  const double scale = target_hs_norm / current;
  MHDState out = state;
  out.u.c1.coeffs() *= scale;
  out.u.c2.coeffs() *= scale;
  out.b.c1.coeffs() *= scale;
  out.b.c2.coeffs() *= scale;
  return out;
}

double alpha_low_for_decay_epsilon(double eps) { return std::min(2.0 * eps - 1.0, 0.0); }

std::string to_string(ICSpec::Kind kind) {
  switch (kind) {
    case ICSpec::Kind::shear: return "shear";
    case ICSpec::Kind::elsasser_aligned: return "elsasser_aligned";
    case ICSpec::Kind::single_mode: return "single_mode";
    case ICSpec::Kind::random_spectrum: return "random_spectrum";
  }
  return "?";
}

}  // namespace mhd2d
