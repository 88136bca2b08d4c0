#pragma once

#include "mimecloak/cloakmap.hpp"
#include "mimecloak/core.hpp"

namespace mimecloak {

// Frequency bookkeeping under the normalization hbar/2 = 1, m0 = 1, c = 1,
// V = 0: the vacuum equation is -laplace(u) = k^2 u, so the quantum energy is
// E = k^2 and the optics frequency is omega = k. Everything is derived from
// the vacuum wavelength.
struct PhysicsConfig {
  double lambda = 1.0;
  double k = kTwoPi;
  double energy = kTwoPi * kTwoPi;
  double v_background = 0.0;
  double loss_delta = 0.0;

  static PhysicsConfig from_wavelength(double lambda, double loss_delta = 0.0);
};

// Coefficients of the transformed equation -div(A grad u) - k^2 b u = 0:
// A is the in-plane block of T^-1 (the inverse effective-mass tensor up to
// m0), b = T^-1_33 scales the (V - E) term.
struct PdeCoefficients {
  Complex a11{1.0, 0.0}, a12{0.0, 0.0}, a22{1.0, 0.0};
  Complex b{1.0, 0.0};
};

PdeCoefficients pde_coefficients(const TensorSample& sample, const PhysicsConfig& cfg,
                                 CloakMode mode);

// Relabeling metadata for the transverse-electric Helmholtz reading of the
// same coefficients; no numerical change.
struct HelmholtzView {
  const char* tensor_role;  // "permittivity"
  double omega;
};

HelmholtzView helmholtz_view(const PhysicsConfig& cfg);

}  // namespace mimecloak
