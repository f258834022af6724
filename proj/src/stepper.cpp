#include "mhd2d/stepper.hpp"

#include <cmath>

#include "mhd2d/operators.hpp"

namespace mhd2d {

Stepper::Stepper(const Grid& grid, const SolverOptions& options)
    : grid_(grid), options_(options) {
  options_.validate();
  if (options_.mode == RhsMode::regularized) mollifier_.emplace(grid_, options_.eps_reg);
  full_ = make_propagator(options_.dt);
  half_ = make_propagator(0.5 * options_.dt);
}

Stepper::Propagator Stepper::make_propagator(double tau) const {
  const int n = grid_.n();
  Propagator p;
  p.decay.resize(n, n);
  p.cos_phase.resize(n, n);
  p.sin_phase.resize(n, n);
  for (int j = 0; j < n; ++j) {
    const double xj = grid_.wavenumber(j);
    for (int i = 0; i < n; ++i) {
      const double xi = grid_.wavenumber(i);
      const double m =
          options_.mode == RhsMode::regularized ? mollifier_->multiplier()(i, j) : 1.0;
      const double damp = m * (xi * xi + xj * xj);
      // the d1 coupling is dropped on the unpaired Nyquist column, as in differentiate()
      const double rate = (grid_.wave_index(i) == -n / 2) ? 0.0 : m * xi;
      p.decay(i, j) = std::exp(-damp * tau);
      p.cos_phase(i, j) = std::cos(rate * tau);
      p.sin_phase(i, j) = std::sin(rate * tau);
    }
  }
  return p;
}

void Stepper::apply_propagator(const Propagator& p, VectorField& u, VectorField& b) const {
  const int n = grid_.n();
  auto mix = [&](Eigen::ArrayXXcd& a, Eigen::ArrayXXcd& c) {
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) {
        const double d = p.decay(i, j), co = p.cos_phase(i, j), si = p.sin_phase(i, j);
        const Complex av = a(i, j), cv = c(i, j);
        a(i, j) = d * (co * av + Complex(-si * cv.imag(), si * cv.real()));
        c(i, j) = d * (co * cv + Complex(-si * av.imag(), si * av.real()));
      }
    }
  };
  mix(u.c1.coeffs(), b.c1.coeffs());
  mix(u.c2.coeffs(), b.c2.coeffs());
}

NonlinearTerms Stepper::eval_nonlinear(const VectorField& u, const VectorField& b) const {
  return options_.mode == RhsMode::regularized
             ? regularized_nonlinear_terms(u, b, *mollifier_, options_.dealias)
             : nonlinear_terms(u, b, options_.dealias);
}

namespace {

struct Pair {
  VectorField u, b;
  Pair(VectorField u_, VectorField b_) : u(std::move(u_)), b(std::move(b_)) {}
  void add_scaled(const Pair& other, double c) {
    u.c1.coeffs() += c * other.u.c1.coeffs();
    u.c2.coeffs() += c * other.u.c2.coeffs();
    b.c1.coeffs() += c * other.b.c1.coeffs();
    b.c2.coeffs() += c * other.b.c2.coeffs();
  }
  // stage hygiene: re-project the solenoidal constraint and pin the mean mode,
  // which the flow conserves and the state contract fixes at zero
  void project() {
    u = leray_project(u);
    b = leray_project(b);
    u.c1.coeffs()(0, 0) = 0.0;
    u.c2.coeffs()(0, 0) = 0.0;
    b.c1.coeffs()(0, 0) = 0.0;
    b.c2.coeffs()(0, 0) = 0.0;
  }
};

}  // namespace

MHDState Stepper::step(const MHDState& state) const {
  const double h = options_.dt;

  if (options_.linear_only) {
    MHDState out = state;
    apply_propagator(full_, out.u, out.b);
    out.time = state.time + h;
    return out;
  }

  // stage slopes: velocity equation projected; induction equation projected only
  // in regularized mode (the displayed approximate system projects every term)
  auto slope = [&](const Pair& y, double* speed_out = nullptr) -> Pair {
    NonlinearTerms t = eval_nonlinear(y.u, y.b);
    if (speed_out) *speed_out = t.max_speed;
    VectorField ku = leray_project(t.momentum);
    VectorField kb = options_.mode == RhsMode::regularized ? leray_project(t.induction)
                                                           : std::move(t.induction);
    // the quadratic terms integrate to zero over the box; drop their rounding mean
    ku.c1.coeffs()(0, 0) = 0.0;
    ku.c2.coeffs()(0, 0) = 0.0;
    kb.c1.coeffs()(0, 0) = 0.0;
    kb.c2.coeffs()(0, 0) = 0.0;
    return Pair(std::move(ku), std::move(kb));
  };

  Pair y(state.u, state.b);
  double speed = 0.0;
  Pair k1 = slope(y, &speed);

  const double admissible = 0.5 * grid_.spacing() / std::max(1.0, speed + 1.0);
  if (h > admissible) throw CflError(h, admissible);

  Pair ynew = y;
  if (options_.scheme == Scheme::ifrk2) {
    Pair pred = y;
    pred.add_scaled(k1, h);
    apply_propagator(full_, pred.u, pred.b);
    pred.project();
    Pair k2 = slope(pred);

    ynew.add_scaled(k1, 0.5 * h);
    apply_propagator(full_, ynew.u, ynew.b);
    ynew.add_scaled(k2, 0.5 * h);
    ynew.project();
  } else {
    Pair ya = y;
    ya.add_scaled(k1, 0.5 * h);
    apply_propagator(half_, ya.u, ya.b);
    ya.project();
    Pair k2 = slope(ya);

    Pair yb = y;
    apply_propagator(half_, yb.u, yb.b);
    yb.add_scaled(k2, 0.5 * h);
    yb.project();
    Pair k3 = slope(yb);

    Pair yc = y;
    apply_propagator(full_, yc.u, yc.b);
    Pair k3h = k3;
    apply_propagator(half_, k3h.u, k3h.b);
    yc.add_scaled(k3h, h);
    yc.project();
    Pair k4 = slope(yc);

    apply_propagator(full_, ynew.u, ynew.b);
    Pair acc = k1;
    apply_propagator(full_, acc.u, acc.b);
    Pair k2h = k2;
    apply_propagator(half_, k2h.u, k2h.b);
    acc.add_scaled(k2h, 2.0);
    Pair k3hh = k3;
    apply_propagator(half_, k3hh.u, k3hh.b);
    acc.add_scaled(k3hh, 2.0);
    acc.add_scaled(k4, 1.0);
    ynew.add_scaled(acc, h / 6.0);
    ynew.project();
  }

  const double total = ynew.u.c1.coeffs().abs2().sum() + ynew.u.c2.coeffs().abs2().sum() +
                       ynew.b.c1.coeffs().abs2().sum() + ynew.b.c2.coeffs().abs2().sum();
  if (!std::isfinite(total)) throw NanError(state.time + h);

  return MHDState(std::move(ynew.u), std::move(ynew.b), state.time + h);
}

MHDState step(const MHDState& state, const SolverOptions& options) {
  return Stepper(state.grid(), options).step(state);
}

}  // namespace mhd2d
