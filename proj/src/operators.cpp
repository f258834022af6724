#include "mhd2d/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace mhd2d {

SpectralField differentiate(const SpectralField& f, int axis, int order) {
  if (axis != 1 && axis != 2) throw std::invalid_argument("differentiate: axis must be 1 or 2");
  if (order < 1) throw std::invalid_argument("differentiate: order must be positive");
  const Grid& g = f.grid();
  const int n = g.n();
  Eigen::ArrayXXcd out = f.coeffs();
  // (i xi)^order = i^order * xi^order; split into the i^order phase and a real power.
  const Complex phase = std::pow(Complex(0.0, 1.0), order);
  const bool odd = (order % 2) != 0;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const double xi = (axis == 1) ? g.wavenumber(i) : g.wavenumber(j);
      const int k = (axis == 1) ? g.wave_index(i) : g.wave_index(j);
      if (odd && k == -n / 2) {
        out(i, j) = 0.0;
        continue;
      }
      out(i, j) *= phase * std::pow(xi, order);
    }
  }
  return SpectralField(g, std::move(out), f.real_flag());
}

SpectralField laplacian(const SpectralField& f) {
  const Grid& g = f.grid();
  const int n = g.n();
  Eigen::ArrayXXcd out = f.coeffs();
  for (int j = 0; j < n; ++j) {
    const double xj = g.wavenumber(j);
    for (int i = 0; i < n; ++i) {
      const double xi = g.wavenumber(i);
      out(i, j) *= -(xi * xi + xj * xj);
    }
  }
  return SpectralField(g, std::move(out), f.real_flag());
}

SpectralField inverse_laplacian(const SpectralField& f) {
  const Grid& g = f.grid();
  const int n = g.n();
  Eigen::ArrayXXcd out = f.coeffs();
  for (int j = 0; j < n; ++j) {
    const double xj = g.wavenumber(j);
    for (int i = 0; i < n; ++i) {
      const double xi = g.wavenumber(i);
      const double k2 = xi * xi + xj * xj;
      out(i, j) = (k2 == 0.0) ? Complex(0.0, 0.0) : out(i, j) / (-k2);
    }
  }
  return SpectralField(g, std::move(out), f.real_flag());
}

VectorField leray_project(const VectorField& v) {
  const Grid& g = v.grid();
  const int n = g.n();
  Eigen::ArrayXXcd out1 = v.c1.coeffs();
  Eigen::ArrayXXcd out2 = v.c2.coeffs();
  for (int j = 0; j < n; ++j) {
    const double xj = g.wavenumber(j);
    for (int i = 0; i < n; ++i) {
      const double xi = g.wavenumber(i);
      const double k2 = xi * xi + xj * xj;
      if (k2 == 0.0) continue;  // mean mode passes through
      const Complex dot = (xi * out1(i, j) + xj * out2(i, j)) / k2;
      out1(i, j) -= xi * dot;
      out2(i, j) -= xj * dot;
    }
  }
  return VectorField(SpectralField(g, std::move(out1), v.c1.real_flag()),
                     SpectralField(g, std::move(out2), v.c2.real_flag()));
}

SpectralField lambda_s(const SpectralField& f, double s) {
  const Grid& g = f.grid();
  const int n = g.n();
  Eigen::ArrayXXcd out = f.coeffs();
  const double half = 0.5 * s;
  for (int j = 0; j < n; ++j) {
    const double xj = g.wavenumber(j);
    for (int i = 0; i < n; ++i) {
      const double xi = g.wavenumber(i);
      out(i, j) *= std::pow(1.0 + xi * xi + xj * xj, half);
    }
  }
  return SpectralField(g, std::move(out), f.real_flag());
}

VectorField lambda_s(const VectorField& v, double s) {
  return VectorField(lambda_s(v.c1, s), lambda_s(v.c2, s));
}

SpectralField riesz_second(const SpectralField& f, int i_axis, int j_axis) {
  if (i_axis < 1 || i_axis > 2 || j_axis < 1 || j_axis > 2)
    throw std::invalid_argument("riesz_second: axes must be 1 or 2");
  const Grid& g = f.grid();
  const int n = g.n();
  Eigen::ArrayXXcd out = f.coeffs();
  for (int j = 0; j < n; ++j) {
    const double xj = g.wavenumber(j);
    for (int i = 0; i < n; ++i) {
      const double xi = g.wavenumber(i);
      const double k2 = xi * xi + xj * xj;
      if (k2 == 0.0) {
        out(i, j) = 0.0;
        continue;
      }
      const double a = (i_axis == 1) ? xi : xj;
      const double b = (j_axis == 1) ? xi : xj;
      out(i, j) *= a * b / k2;
    }
  }
  return SpectralField(g, std::move(out), f.real_flag());
}

VectorField gradient(const SpectralField& f) {
  return VectorField(differentiate(f, 1), differentiate(f, 2));
}

SpectralField divergence(const VectorField& v) {
  SpectralField d = differentiate(v.c1, 1);
  d.coeffs() += differentiate(v.c2, 2).coeffs();
  return d;
}

SpectralField curl(const VectorField& v) {
  SpectralField w = differentiate(v.c2, 1);
  w.coeffs() -= differentiate(v.c1, 2).coeffs();
  return w;
}

double max_divergence(const VectorField& v) {
  return divergence(v).coeffs().abs().maxCoeff();
}

void dealias_in_place(SpectralField& f) {
  const Grid& g = f.grid();
  const int n = g.n();
  const int kmax = g.dealias_limit();
  Eigen::ArrayXXcd& c = f.coeffs();
  for (int j = 0; j < n; ++j) {
    const bool cut_j = std::abs(g.wave_index(j)) > kmax;
    for (int i = 0; i < n; ++i) {
      if (cut_j || std::abs(g.wave_index(i)) > kmax) c(i, j) = 0.0;
    }
  }
}

SpectralField dealias(const SpectralField& f) {
  SpectralField out = f;
  dealias_in_place(out);
  return out;
}

VectorField dealias(const VectorField& v) {
  return VectorField(dealias(v.c1), dealias(v.c2));
}

double unresolved_fraction(const SpectralField& f) {
  const Grid& g = f.grid();
  const int n = g.n();
  const int cut = n / 3;
  double top = 0.0, total = 0.0;
  for (int j = 0; j < n; ++j) {
    const int kj = std::abs(g.wave_index(j));
    for (int i = 0; i < n; ++i) {
      const int ki = std::abs(g.wave_index(i));
      const double m = std::norm(f.coeffs()(i, j));
      total += m;
      if (std::max(ki, kj) > cut) top += m;
    }
  }
  return total == 0.0 ? 0.0 : top / total;
}

}  // namespace mhd2d
