#pragma once

#include "mhd2d/spectral_field.hpp"

namespace mhd2d {

/// d^order/dx_axis^order (axis is 1 or 2). For odd orders the Nyquist column has
/// no conjugate partner, so it is zeroed to keep real fields real.
SpectralField differentiate(const SpectralField& f, int axis, int order = 1);

SpectralField laplacian(const SpectralField& f);

/// Zero-mean inverse Laplacian: 1/(-|xi|^2) multiplier, mean mode mapped to zero.
SpectralField inverse_laplacian(const SpectralField& f);

/// Leray projection v - grad(Delta^-1 div v); mode by mode
/// v_hat -> v_hat - xi (xi . v_hat)/|xi|^2, with the xi = 0 mode passed through.
VectorField leray_project(const VectorField& v);

/// Bessel operator (1 - Delta)^{s/2}: multiplier (1 + |xi|^2)^{s/2}.
SpectralField lambda_s(const SpectralField& f, double s);
VectorField lambda_s(const VectorField& v, double s);

/// Delta^{-1} d_i d_j (i, j in {1,2}): multiplier xi_i xi_j / |xi|^2, zero mean.
SpectralField riesz_second(const SpectralField& f, int i, int j);

VectorField gradient(const SpectralField& f);
SpectralField divergence(const VectorField& v);
SpectralField curl(const VectorField& v);  // scalar d1 v2 - d2 v1

/// max_k |div_hat(k)| over all modes.
double max_divergence(const VectorField& v);

/// 2/3-rule mask: zero every mode with max(|k1|, |k2|) > floor((n-1)/3).
SpectralField dealias(const SpectralField& f);
VectorField dealias(const VectorField& v);
void dealias_in_place(SpectralField& f);

/// Fraction of squared-coefficient mass carried by the top-third shells
/// (modes removed by the dealias mask); the spectral-resolution gauge.
double unresolved_fraction(const SpectralField& f);

}  // namespace mhd2d
