#include "mimecloak/materials.hpp"

#include <cmath>

namespace mimecloak {

PhysicsConfig PhysicsConfig::from_wavelength(double lambda, double loss_delta) {
  if (!(lambda > 0.0)) throw Error(ErrorCode::InvalidArgument, "wavelength must be positive");
  if (loss_delta < 0.0) throw Error(ErrorCode::InvalidArgument, "loss_delta must be >= 0");
  PhysicsConfig cfg;
  cfg.lambda = lambda;
  cfg.k = kTwoPi / lambda;
  cfg.energy = cfg.k * cfg.k;
  cfg.v_background = 0.0;
  cfg.loss_delta = loss_delta;
  return cfg;
}

PdeCoefficients pde_coefficients(const TensorSample& s, const PhysicsConfig& cfg,
                                 CloakMode mode) {
  if (!std::isfinite(s.t_inv_11) || !std::isfinite(s.t_inv_12) || !std::isfinite(s.t_inv_22) ||
      !std::isfinite(s.t_inv_33))
    throw Error(ErrorCode::NonFiniteSample, "tensor sample has non-finite entries");
  PdeCoefficients c;
  c.a11 = s.t_inv_11;
  c.a12 = s.t_inv_12;
  c.a22 = s.t_inv_22;
  c.b = s.t_inv_33;
  if (mode == CloakMode::Fold) {
    Complex shift{0.0, cfg.loss_delta};
    c.a11 += shift;
    c.a22 += shift;
    c.b += shift;
  }
  return c;
}

HelmholtzView helmholtz_view(const PhysicsConfig& cfg) { return {"permittivity", cfg.k}; }

}  // namespace mimecloak
