#pragma once

#include "mhd2d/spectral_field.hpp"

namespace mhd2d {

/// Convolution smoothing J_eps: Fourier multiplier rho_hat(eps*|xi|) where rho is
/// the unit-mass radial bump c*exp(-1/(1-r^2)) on r < 1. The transform is radial,
/// real, bounded by 1, and equals 1 at xi = 0, so constants and means are exact.
class Mollifier {
 public:
  /// Requires 0 < eps < L/4 (the scaled kernel support must fit the box without
  /// wrapping); violations throw std::invalid_argument.
  Mollifier(const Grid& grid, double eps);

  SpectralField apply(const SpectralField& f) const;
  VectorField apply(const VectorField& v) const;

  double eps() const { return eps_; }
  const Grid& grid() const { return grid_; }

  /// rho_hat at a given |xi| (transfer at this mollifier's eps); for tests.
  double transfer(double xi_mag) const { return bump_transform(eps_ * xi_mag); }

  /// Full n x n multiplier array rho_hat(eps |xi_k|).
  const Eigen::ArrayXXd& multiplier() const { return multiplier_; }

  /// rho_hat(s), the 2-D Fourier transform of the normalized bump at radius s.
  static double bump_transform(double s);

 private:
  Grid grid_;
  double eps_;
  Eigen::ArrayXXd multiplier_;
};

/// Convenience wrapper with a process-wide Mollifier cache keyed by (n, L, eps).
SpectralField mollify(const SpectralField& f, double eps);
VectorField mollify(const VectorField& v, double eps);

}  // namespace mhd2d
