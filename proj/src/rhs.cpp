#include "mhd2d/rhs.hpp"

#include <cmath>

#include "mhd2d/operators.hpp"

namespace mhd2d {
namespace {

struct PhysicalVector {
  Eigen::ArrayXXd c1, c2;
};

PhysicalVector to_physical(const VectorField& v) {
  return {v.c1.to_physical(), v.c2.to_physical()};
}

// d1 w_i, d2 w_i for both components, in physical space (4 inverse transforms).
struct PhysicalJacobian {
  Eigen::ArrayXXd d1c1, d2c1, d1c2, d2c2;
};

PhysicalJacobian jacobian(const VectorField& w) {
  return {differentiate(w.c1, 1).to_physical(), differentiate(w.c1, 2).to_physical(),
          differentiate(w.c2, 1).to_physical(), differentiate(w.c2, 2).to_physical()};
}

VectorField forward_pair(const Grid& g, const Eigen::ArrayXXd& p1, const Eigen::ArrayXXd& p2,
                         bool dealias_products) {
  VectorField out(SpectralField::from_physical(g, p1), SpectralField::from_physical(g, p2));
  if (dealias_products) {
    dealias_in_place(out.c1);
    dealias_in_place(out.c2);
  }
  return out;
}

NonlinearTerms nonlinear_from(const VectorField& u, const VectorField& b, bool dealias_products) {
  const Grid& g = u.grid();
  const PhysicalVector up = to_physical(u), bp = to_physical(b);
  const PhysicalJacobian ju = jacobian(u), jb = jacobian(b);

  const Eigen::ArrayXXd mom1 = bp.c1 * jb.d1c1 + bp.c2 * jb.d2c1 - up.c1 * ju.d1c1 - up.c2 * ju.d2c1;
  const Eigen::ArrayXXd mom2 = bp.c1 * jb.d1c2 + bp.c2 * jb.d2c2 - up.c1 * ju.d1c2 - up.c2 * ju.d2c2;
  const Eigen::ArrayXXd ind1 = bp.c1 * ju.d1c1 + bp.c2 * ju.d2c1 - up.c1 * jb.d1c1 - up.c2 * jb.d2c1;
  const Eigen::ArrayXXd ind2 = bp.c1 * ju.d1c2 + bp.c2 * ju.d2c2 - up.c1 * jb.d1c2 - up.c2 * jb.d2c2;

  const double speed = std::sqrt((up.c1.square() + up.c2.square()).maxCoeff()) +
                       std::sqrt((bp.c1.square() + bp.c2.square()).maxCoeff());

  return {forward_pair(g, mom1, mom2, dealias_products),
          forward_pair(g, ind1, ind2, dealias_products), speed};
}

}  // namespace

VectorField advect(const VectorField& a, const VectorField& w, bool dealias_products) {
  const Grid& g = a.grid();
  const PhysicalVector ap = to_physical(a);
  const PhysicalJacobian jw = jacobian(w);
  return forward_pair(g, ap.c1 * jw.d1c1 + ap.c2 * jw.d2c1, ap.c1 * jw.d1c2 + ap.c2 * jw.d2c2,
                      dealias_products);
}

NonlinearTerms nonlinear_terms(const MHDState& state, bool dealias_products) {
  return nonlinear_from(state.u, state.b, dealias_products);
}

NonlinearTerms nonlinear_terms(const VectorField& u, const VectorField& b, bool dealias_products) {
  return nonlinear_from(u, b, dealias_products);
}

NonlinearTerms regularized_nonlinear_terms(const VectorField& u, const VectorField& b,
                                           const Mollifier& moll, bool dealias_products) {
  NonlinearTerms t = nonlinear_from(moll.apply(u), moll.apply(b), dealias_products);
  t.momentum = moll.apply(t.momentum);
  t.induction = moll.apply(t.induction);
  return t;
}

NonlinearTerms regularized_nonlinear_terms(const MHDState& state, const Mollifier& moll,
                                           bool dealias_products) {
  return regularized_nonlinear_terms(state.u, state.b, moll, dealias_products);
}

FieldPair rhs(const MHDState& state, bool dealias_products) {
  NonlinearTerms t = nonlinear_terms(state, dealias_products);
  VectorField du = leray_project(t.momentum);
  du.c1.coeffs() += laplacian(state.u.c1).coeffs() + differentiate(state.b.c1, 1).coeffs();
  du.c2.coeffs() += laplacian(state.u.c2).coeffs() + differentiate(state.b.c2, 1).coeffs();
  VectorField db = std::move(t.induction);
  db.c1.coeffs() += laplacian(state.b.c1).coeffs() + differentiate(state.u.c1, 1).coeffs();
  db.c2.coeffs() += laplacian(state.b.c2).coeffs() + differentiate(state.u.c2, 1).coeffs();
  return {std::move(du), std::move(db)};
}

FieldPair regularized_rhs(const MHDState& state, const Mollifier& moll, bool dealias_products) {
  NonlinearTerms t = regularized_nonlinear_terms(state, moll, dealias_products);
  t.momentum.c1.coeffs() +=
      moll.apply(laplacian(state.u.c1)).coeffs() + moll.apply(differentiate(state.b.c1, 1)).coeffs();
  t.momentum.c2.coeffs() +=
      moll.apply(laplacian(state.u.c2)).coeffs() + moll.apply(differentiate(state.b.c2, 1)).coeffs();
  t.induction.c1.coeffs() +=
      moll.apply(laplacian(state.b.c1)).coeffs() + moll.apply(differentiate(state.u.c1, 1)).coeffs();
  t.induction.c2.coeffs() +=
      moll.apply(laplacian(state.b.c2)).coeffs() + moll.apply(differentiate(state.u.c2, 1)).coeffs();
  return {leray_project(t.momentum), leray_project(t.induction)};
}

FieldPair regularized_rhs(const MHDState& state, double eps_reg, bool dealias_products) {
  Mollifier moll(state.grid(), eps_reg);
  return regularized_rhs(state, moll, dealias_products);
}

SpectralField pressure_recover(const MHDState& state, bool dealias_products) {
  NonlinearTerms t = nonlinear_terms(state, dealias_products);
  return inverse_laplacian(divergence(t.momentum));
}

}  // namespace mhd2d
