#pragma once

#include <cstdint>
#include <string>

#include "mhd2d/spectral_field.hpp"

namespace mhd2d {

/// Initial-condition description. Every generated state is divergence-free
/// (built from stream functions), zero-mean, and confined to the dealiasing hull.
struct ICSpec {
  enum class Kind { shear, elsasser_aligned, single_mode, random_spectrum };

  Kind kind = Kind::shear;
  Grid grid;
  double amplitude = 1e-2;

  // shear / elsasser_aligned: integer mode count per axis.
  int mode_m = 1;

  // single_mode: integer wave indices of the carrying mode.
  int k1 = 1;
  int k2 = 0;

  // random_spectrum: |u_hat|(xi) ~ |xi|^alpha_low below the crossover wavenumber,
  // ~ |xi|^{-r_high} above; amplitude is the exact L2 norm of (u, b); seeded phases.
  double alpha_low = 0.0;
  double r_high = 4.0;
  double crossover = 1.0;
  uint64_t seed = 1;

  ICSpec(const Grid& g) : grid(g) {}
};

/// Build the state described by spec at time 0.
MHDState make_ic(const ICSpec& spec);

/// Scale a nonzero state so that ||(u,b)||_{H^s} equals target exactly
/// (all norms in play are homogeneous of degree one under scaling).
MHDState amplitude_calibrate(const MHDState& state, double target_hs_norm, double s);

/// Low-frequency spectral slope that makes the heat flow from this data decay
/// with L2 exponent min(eps, 1/2): 2*eps - 1, capped at 0 (flat spectrum).
double alpha_low_for_decay_epsilon(double eps);

std::string to_string(ICSpec::Kind kind);

}  // namespace mhd2d
