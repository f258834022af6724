#pragma once

#include <Eigen/Core>
#include <complex>

namespace mhd2d {

/// Forward 2-D transform: coefficients c(k) of f(x) = sum_k c(k) exp(i xi_k . x),
/// i.e. DFT(values)/n^2. Input and output are n x n column-major arrays indexed
/// (i, j) = (axis-1 index, axis-2 index).
Eigen::ArrayXXcd fft_forward(const Eigen::ArrayXXcd& values);

/// Inverse of fft_forward: grid values of the trigonometric polynomial.
Eigen::ArrayXXcd fft_backward(const Eigen::ArrayXXcd& coeffs);

}  // namespace mhd2d
