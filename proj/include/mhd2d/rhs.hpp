#pragma once

#include "mhd2d/mollifier.hpp"
#include "mhd2d/spectral_field.hpp"

namespace mhd2d {

/// Time derivatives of (u, b).
struct FieldPair {
  VectorField du;
  VectorField db;
};

/// Bilinear advection (a . grad) w, pseudospectral with optional 2/3 masking.
VectorField advect(const VectorField& a, const VectorField& w, bool dealias_products = true);

/// Both quadratic sources, sharing transforms:
///   momentum  = b.grad b - u.grad u       (velocity equation, before projection)
///   induction = b.grad u - u.grad b
/// max_speed is the grid maximum of |u| + |b| from the same physical fields.
struct NonlinearTerms {
  VectorField momentum;
  VectorField induction;
  double max_speed;
};
NonlinearTerms nonlinear_terms(const MHDState& state, bool dealias_products = true);
NonlinearTerms nonlinear_terms(const VectorField& u, const VectorField& b,
                               bool dealias_products = true);

/// Same structure evaluated on mollified fields with the outer smoothing applied:
/// J[(Jb).grad(Jb)] - J[(Ju).grad(Ju)] and J[(Jb).grad(Ju)] - J[(Ju).grad(Jb)].
NonlinearTerms regularized_nonlinear_terms(const MHDState& state, const Mollifier& moll,
                                           bool dealias_products = true);
NonlinearTerms regularized_nonlinear_terms(const VectorField& u, const VectorField& b,
                                           const Mollifier& moll, bool dealias_products = true);

/// Perturbation system around (0, e1):
///   du/dt = Lap u + d1 b + P(b.grad b - u.grad u)
///   db/dt = Lap b + d1 u + b.grad u - u.grad b
FieldPair rhs(const MHDState& state, bool dealias_products = true);

/// Mollified approximation: every term of both equations wrapped in P J_eps,
///   du/dt = P J[(Jb).grad(Jb)] - P J[(Ju).grad(Ju)] + P J(d1 b) + P J(Lap u)
/// and the analogous induction equation (also projected).
FieldPair regularized_rhs(const MHDState& state, double eps_reg, bool dealias_products = true);
FieldPair regularized_rhs(const MHDState& state, const Mollifier& moll,
                          bool dealias_products = true);

/// Zero-mean pressure from Lap p = div(b.grad b - u.grad u); adding -grad p to
/// the unprojected velocity RHS makes it divergence-free.
SpectralField pressure_recover(const MHDState& state, bool dealias_products = true);

}  // namespace mhd2d
