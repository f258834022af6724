#pragma once

#include <Eigen/Core>
#include <cmath>
#include <stdexcept>

namespace mhd2d {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Periodic box [0,L)^2 sampled on an n x n grid, with the standard FFT
/// wavenumber layout k in [-n/2, n/2) and xi = (2*pi/L)*k.
class Grid {
 public:
  Grid(int n, double box_length) : n_(n), box_length_(box_length) {
    if (n < 8 || (n & (n - 1)) != 0)
      throw std::invalid_argument("Grid: n must be a power of two, n >= 8");
    if (!(box_length > 0.0))
      throw std::invalid_argument("Grid: box_length must be positive");
    xi_.resize(n_);
    for (int i = 0; i < n_; ++i) xi_[i] = (kTwoPi / box_length_) * wave_index(i);
  }

  int n() const { return n_; }
  double box_length() const { return box_length_; }
  double spacing() const { return box_length_ / n_; }

  /// Integer wave index for storage index i: 0,1,...,n/2-1,-n/2,...,-1.
  int wave_index(int i) const { return i < n_ / 2 ? i : i - n_; }

  /// Storage index holding integer wave index k (k in [-n/2, n/2)).
  int storage_index(int k) const { return k >= 0 ? k : k + n_; }

  double wavenumber(int i) const { return xi_[i]; }
  const Eigen::ArrayXd& wavenumbers() const { return xi_; }

  /// Smallest nonzero |xi| resolved by the box.
  double min_wavenumber() const { return kTwoPi / box_length_; }

  /// Largest integer wave index kept by the 2/3 dealiasing mask.
  int dealias_limit() const { return (n_ - 1) / 3; }

  bool operator==(const Grid& other) const {
    return n_ == other.n_ && box_length_ == other.box_length_;
  }
  bool operator!=(const Grid& other) const { return !(*this == other); }

 private:
  int n_;
  double box_length_;
  Eigen::ArrayXd xi_;
};

}  // namespace mhd2d
