#include "coldplasma/dynamics.hpp"

#include <cmath>
#include <string>

#include "coldplasma/errors.hpp"

namespace coldplasma {

namespace {

void require_finite(double value, const char* name) {
  if (!std::isfinite(value)) {
    throw DomainError(std::string(name) + " must be finite");
  }
}

}  // namespace

double lorentz_velocity(double P) {
  require_finite(P, "P");
  return detail::lorentz_velocity_unchecked(P);
}

double kappa(double P) {
  require_finite(P, "P");
  return detail::kappa_unchecked(P);
}

double energy_functional(double P, double E) {
  require_finite(P, "P");
  require_finite(E, "E");
  return 2.0 * std::sqrt(1.0 + P * P) + E * E;
}

EnergyBound kappa_lower_bound(double P0, double E0) {
  const double calE0 = energy_functional(P0, E0);
  return {calE0, 8.0 / (calE0 * calE0 * calE0), 1.0};
}

StateDerivative characteristic_rhs(const ParticleState& s, double nu) {
  require_finite(s.P, "P");
  require_finite(s.R, "R");
  require_finite(s.Q, "Q");
  require_finite(s.D, "D");
  require_finite(nu, "nu");
  if (nu < 0.0) throw DomainError("nu must be non-negative");
  return detail::characteristic_rhs_unchecked(s.P, s.R, s.Q, s.D, nu);
}

}  // namespace coldplasma
