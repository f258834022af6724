#pragma once

#include "mhd2d/spectral_field.hpp"

namespace mhd2d {

// Plancherel convention: ||f||_L2^2 = L^2 * sum_k |c(k)|^2 = integral of |f|^2
// over the box; every spectral norm below follows the same normalization.

double norm_l2(const SpectralField& f);
double norm_l2(const VectorField& v);

/// L^p by quadrature on the grid, (L^2/n^2) sum |f(x_j)|^p, p in [1, inf).
double norm_lp(const SpectralField& f, double p);

/// Grid maximum of |f|; for vectors, of the pointwise Euclidean magnitude.
double norm_linf(const SpectralField& f);
double norm_linf(const VectorField& v);

double norm_hs(const SpectralField& f, double s);
double norm_hs(const VectorField& v, double s);

/// Homogeneous norm with multiplier |xi|^sigma. For sigma < 0 the mean mode
/// must vanish (the norm is undefined on the torus otherwise).
double norm_hdot(const SpectralField& f, double sigma);
double norm_hdot(const VectorField& v, double sigma);

/// ||grad f||_L2 as a spectral sum (no transform).
double norm_grad_l2(const SpectralField& f);
double norm_grad_l2(const VectorField& v);

double state_norm_l2(const MHDState& s);
double state_norm_hs(const MHDState& s, double order);
double state_norm_hdot(const MHDState& s, double sigma);

/// Norm selector mirroring the spec-level "kind" parameter.
struct NormKind {
  enum class Tag { l2, lp, linf, hs, hdot } tag;
  double param = 0.0;
  static NormKind L2() { return {Tag::l2, 0.0}; }
  static NormKind Lp(double p) { return {Tag::lp, p}; }
  static NormKind Linf() { return {Tag::linf, 0.0}; }
  static NormKind Hs(double s) { return {Tag::hs, s}; }
  static NormKind Hdot(double sigma) { return {Tag::hdot, sigma}; }
};

double norm(const SpectralField& f, const NormKind& kind);
double norm(const VectorField& v, const NormKind& kind);

}  // namespace mhd2d
