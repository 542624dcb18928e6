#pragma once

// Blow-up detection along one characteristic through the linear equation
// z'' - nu z' + K(theta) z = 0 with z(0) = 1, z'(0) = -u0. The derivatives
// Q and D become infinite where z'(theta) = lambda0 exp(nu theta).

#include <optional>
#include <vector>

#include "coldplasma/phase_plane.hpp"

namespace coldplasma {

// Uniformly sampled function: values[i] at theta0 + i * dtheta.
struct SampledFunction {
  double theta0 = 0.0;
  double dtheta = 0.0;
  std::vector<double> values;

  double theta_end() const noexcept {
    return values.empty() ? theta0 : theta0 + dtheta * static_cast<double>(values.size() - 1);
  }

  // Four-point cubic (Lagrange) interpolation; clamps the stencil at the ends.
  double operator()(double theta) const;
};

struct HillOptions {
  double bisection_tol = 1e-12;
};

// p is the state (D, Q) at theta0 = K_of_theta.theta0 with its energy bound
// unused. Returns the absolute time of the first sign change of
// z' - lambda0 e^{nu (theta - theta0)} up to min(horizon, end of samples),
// or nothing. Throws ValidationError for non-positive or non-finite samples
// and NotApplicable for beta = 0.
std::optional<double> hill_blowup_detector(const SampledFunction& K_of_theta, const PhasePoint& p,
                                           double nu, double horizon, const HillOptions& options = {});

}  // namespace coldplasma
