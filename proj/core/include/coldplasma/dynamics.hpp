#pragma once

// Closures and characteristic right-hand sides for plane 1D relativistic
// cold-plasma oscillations with electron-ion friction. All quantities are
// dimensionless (lengths in 1/k_p, times in 1/omega_p, momenta in m c).

#include <cmath>

namespace coldplasma {

// State carried along one characteristic. R is the displacement from the
// equilibrium position rhoL and equals the electric field on the trajectory.
struct ParticleState {
  double rhoL = 0.0;
  double P = 0.0;
  double R = 0.0;
  double Q = 0.0;  // dP/drho
  double D = 0.0;  // dE/drho

  double position() const noexcept { return rhoL + R; }
  double density() const noexcept { return 1.0 - D; }

  friend bool operator==(const ParticleState&, const ParticleState&) = default;
};

struct StateDerivative {
  double dP = 0.0;
  double dR = 0.0;
  double dQ = 0.0;
  double dD = 0.0;

  friend bool operator==(const StateDerivative&, const StateDerivative&) = default;
};

// Per-characteristic bounds K- <= K(theta) <= K+ = 1 derived from the
// energy functional calE0 = 2 sqrt(1 + P0^2) + E0^2.
struct EnergyBound {
  double calE0 = 2.0;
  double Kminus = 1.0;
  double Kplus = 1.0;
};

// V = P / sqrt(1 + P^2). Throws DomainError on non-finite P.
double lorentz_velocity(double P);

// K = (1 + P^2)^(-3/2). Throws DomainError on non-finite P.
double kappa(double P);

// 2 sqrt(1 + P^2) + E^2; a first integral of the collisionless flow.
double energy_functional(double P, double E);

EnergyBound kappa_lower_bound(double P0, double E0);

// (dP, dR, dQ, dD) = (-R - nu P, V, -D - K Q^2 - nu Q, (1 - D) K Q).
// Throws DomainError on non-finite state or negative/non-finite nu.
StateDerivative characteristic_rhs(const ParticleState& s, double nu);

namespace detail {

// Unchecked kernels for hot loops whose callers validate finiteness.
inline double lorentz_velocity_unchecked(double P) noexcept {
  return P / std::sqrt(1.0 + P * P);
}

inline double kappa_unchecked(double P) noexcept {
  const double g = std::sqrt(1.0 + P * P);
  return 1.0 / (g * g * g);
}

inline StateDerivative characteristic_rhs_unchecked(double P, double R, double Q,
                                                    double D, double nu) noexcept {
  const double g = std::sqrt(1.0 + P * P);
  const double K = 1.0 / (g * g * g);
  return {-R - nu * P, P / g, -D - K * Q * Q - nu * Q, (1.0 - D) * K * Q};
}

}  // namespace detail

}  // namespace coldplasma
