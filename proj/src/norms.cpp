#include "mhd2d/norms.hpp"

#include <cmath>
#include <stdexcept>

namespace mhd2d {
namespace {

template <typename Weight>
double weighted_sum(const SpectralField& f, Weight w) {
  const Grid& g = f.grid();
  const int n = g.n();
  double acc = 0.0;
  for (int j = 0; j < n; ++j) {
    const double xj = g.wavenumber(j);
    for (int i = 0; i < n; ++i) {
      const double xi = g.wavenumber(i);
      acc += w(xi * xi + xj * xj) * std::norm(f.coeffs()(i, j));
    }
  }
  return acc;
}

}  // namespace

double norm_l2(const SpectralField& f) {
  const double L = f.grid().box_length();
  return L * std::sqrt(f.coeffs().abs2().sum());
}

double norm_l2(const VectorField& v) {
  const double L = v.grid().box_length();
  return L * std::sqrt(v.c1.coeffs().abs2().sum() + v.c2.coeffs().abs2().sum());
}

double norm_lp(const SpectralField& f, double p) {
  if (p < 1.0) throw std::invalid_argument("norm_lp: p must be >= 1");
  const Grid& g = f.grid();
  const Eigen::ArrayXXd phys = f.to_physical();
  const double cell = (g.box_length() * g.box_length()) / (static_cast<double>(g.n()) * g.n());
  return std::pow((phys.abs().pow(p) * cell).sum(), 1.0 / p);
}

double norm_linf(const SpectralField& f) { return f.to_physical().abs().maxCoeff(); }

double norm_linf(const VectorField& v) {
  const Eigen::ArrayXXd p1 = v.c1.to_physical();
  const Eigen::ArrayXXd p2 = v.c2.to_physical();
  return std::sqrt((p1.square() + p2.square()).maxCoeff());
}

double norm_hs(const SpectralField& f, double s) {
  const double L = f.grid().box_length();
  return L * std::sqrt(weighted_sum(f, [s](double k2) { return std::pow(1.0 + k2, s); }));
}

double norm_hs(const VectorField& v, double s) {
  const double a = norm_hs(v.c1, s), b = norm_hs(v.c2, s);
  return std::sqrt(a * a + b * b);
}

double norm_hdot(const SpectralField& f, double sigma) {
  if (sigma < 0.0) {
    const double scale = f.coeffs().abs().maxCoeff();
    if (std::abs(f.mean_mode()) > 1e-12 * scale)
      throw std::invalid_argument(
          "norm_hdot: negative-order homogeneous norm requires a zero mean mode");
  }
  const double L = f.grid().box_length();
  return L * std::sqrt(weighted_sum(
                 f, [sigma](double k2) { return k2 == 0.0 ? 0.0 : std::pow(k2, sigma); }));
}

double norm_hdot(const VectorField& v, double sigma) {
  const double a = norm_hdot(v.c1, sigma), b = norm_hdot(v.c2, sigma);
  return std::sqrt(a * a + b * b);
}

double norm_grad_l2(const SpectralField& f) {
  const double L = f.grid().box_length();
  return L * std::sqrt(weighted_sum(f, [](double k2) { return k2; }));
}

double norm_grad_l2(const VectorField& v) {
  const double a = norm_grad_l2(v.c1), b = norm_grad_l2(v.c2);
  return std::sqrt(a * a + b * b);
}

double state_norm_l2(const MHDState& s) {
  const double a = norm_l2(s.u), b = norm_l2(s.b);
  return std::sqrt(a * a + b * b);
}

double state_norm_hs(const MHDState& s, double order) {
  const double a = norm_hs(s.u, order), b = norm_hs(s.b, order);
  return std::sqrt(a * a + b * b);
}

double state_norm_hdot(const MHDState& s, double sigma) {
  const double a = norm_hdot(s.u, sigma), b = norm_hdot(s.b, sigma);
  return std::sqrt(a * a + b * b);
}

double norm(const SpectralField& f, const NormKind& kind) {
  switch (kind.tag) {
    case NormKind::Tag::l2: return norm_l2(f);
    case NormKind::Tag::lp: return norm_lp(f, kind.param);
    case NormKind::Tag::linf: return norm_linf(f);
    case NormKind::Tag::hs: return norm_hs(f, kind.param);
    case NormKind::Tag::hdot: return norm_hdot(f, kind.param);
  }
  throw std::logic_error("norm: bad kind");
}

double norm(const VectorField& v, const NormKind& kind) {
  switch (kind.tag) {
    case NormKind::Tag::l2: return norm_l2(v);
    case NormKind::Tag::linf: return norm_linf(v);
    case NormKind::Tag::hs: return norm_hs(v, kind.param);
    case NormKind::Tag::hdot: return norm_hdot(v, kind.param);
    case NormKind::Tag::lp: {
      const double a = norm_lp(v.c1, kind.param), b = norm_lp(v.c2, kind.param);
      const double p = kind.param;
      return std::pow(std::pow(a, p) + std::pow(b, p), 1.0 / p);
    }
  }
  throw std::logic_error("norm: bad kind");
}

}  // namespace mhd2d
