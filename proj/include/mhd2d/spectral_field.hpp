#pragma once

#include <complex>
#include <utility>

#include "mhd2d/fft.hpp"
#include "mhd2d/grid.hpp"

namespace mhd2d {

using Complex = std::complex<double>;

/// One scalar field stored as Fourier coefficients on a Grid. real_flag asserts
/// conjugate symmetry coeff(-k) = conj(coeff(k)); all simulation fields are real.
class SpectralField {
 public:
  SpectralField(const Grid& grid, Eigen::ArrayXXcd coeffs, bool real_flag)
      : grid_(grid), coeffs_(std::move(coeffs)), real_flag_(real_flag) {
    if (coeffs_.rows() != grid_.n() || coeffs_.cols() != grid_.n())
      throw std::invalid_argument("SpectralField: coefficient array does not match grid");
  }

  static SpectralField zero(const Grid& grid) {
    return SpectralField(grid, Eigen::ArrayXXcd::Zero(grid.n(), grid.n()), true);
  }

  static SpectralField from_physical(const Grid& grid, const Eigen::ArrayXXd& values) {
    if (values.rows() != grid.n() || values.cols() != grid.n())
      throw std::invalid_argument("SpectralField: physical array does not match grid");
    return SpectralField(grid, fft_forward(values.cast<Complex>()), true);
  }

  const Grid& grid() const { return grid_; }
  const Eigen::ArrayXXcd& coeffs() const { return coeffs_; }
  Eigen::ArrayXXcd& coeffs() { return coeffs_; }
  bool real_flag() const { return real_flag_; }
  void set_real_flag(bool flag) { real_flag_ = flag; }

  /// Coefficient at integer wave indices (k1, k2), each in [-n/2, n/2).
  Complex coeff(int k1, int k2) const {
    return coeffs_(grid_.storage_index(k1), grid_.storage_index(k2));
  }
  void set_coeff(int k1, int k2, Complex value) {
    coeffs_(grid_.storage_index(k1), grid_.storage_index(k2)) = value;
  }

  /// Grid values; valid for real_flag fields (imaginary parts are rounding noise).
  Eigen::ArrayXXd to_physical() const { return fft_backward(coeffs_).real(); }

  Eigen::ArrayXXcd to_physical_complex() const { return fft_backward(coeffs_); }

  Complex mean_mode() const { return coeffs_(0, 0); }

  /// max_k |c(-k) - conj(c(k))|, for checking the real_flag invariant.
  double max_conjugate_asymmetry() const {
    const int n = grid_.n();
    double worst = 0.0;
    for (int j = 0; j < n; ++j) {
      const int jr = (n - j) % n;
      for (int i = 0; i < n; ++i) {
        const int ir = (n - i) % n;
        worst = std::max(worst, std::abs(coeffs_(ir, jr) - std::conj(coeffs_(i, j))));
      }
    }
    return worst;
  }

 private:
  Grid grid_;
  Eigen::ArrayXXcd coeffs_;
  bool real_flag_;
};

/// Two scalar components on one shared grid.
struct VectorField {
  SpectralField c1;
  SpectralField c2;

  VectorField(SpectralField a, SpectralField b) : c1(std::move(a)), c2(std::move(b)) {
    if (c1.grid() != c2.grid())
      throw std::invalid_argument("VectorField: components must share one grid");
  }
  static VectorField zero(const Grid& grid) {
    return VectorField(SpectralField::zero(grid), SpectralField::zero(grid));
  }
  const Grid& grid() const { return c1.grid(); }
};

/// Velocity and magnetic perturbation pair (u, b) at one time instant. The total
/// magnetic field is e1 + b; both u and b are divergence-free with zero mean.
struct MHDState {
  VectorField u;
  VectorField b;
  double time = 0.0;

  MHDState(VectorField u_, VectorField b_, double t) : u(std::move(u_)), b(std::move(b_)), time(t) {
    if (u.grid() != b.grid()) throw std::invalid_argument("MHDState: u and b grids differ");
  }
  static MHDState zero(const Grid& grid) {
    return MHDState(VectorField::zero(grid), VectorField::zero(grid), 0.0);
  }
  const Grid& grid() const { return u.grid(); }
};

}  // namespace mhd2d
