#include "coldplasma/hill.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "coldplasma/errors.hpp"
#include "coldplasma/hermite.hpp"
#include "coldplasma/integrate.hpp"

namespace coldplasma {

double SampledFunction::operator()(double theta) const {
  const std::size_t n = values.size();
  if (n == 0) throw ValidationError("sampled function is empty", "K_of_theta");
  if (n == 1) return values[0];
  const double x = (theta - theta0) / dtheta;
  long i = static_cast<long>(std::floor(x));
  if (n < 4) {
    i = std::clamp(i, 0L, static_cast<long>(n) - 2);
    const double t = x - static_cast<double>(i);
    return (1.0 - t) * values[static_cast<std::size_t>(i)] + t * values[static_cast<std::size_t>(i + 1)];
  }
  // stencil i-1 .. i+2, shifted inward near the ends
  long start = std::clamp(i - 1, 0L, static_cast<long>(n) - 4);
  const double t = x - static_cast<double>(start);  // position relative to stencil node 0
  double result = 0.0;
  for (int j = 0; j < 4; ++j) {
    double w = 1.0;
    for (int m = 0; m < 4; ++m) {
      if (m != j) w *= (t - m) / static_cast<double>(j - m);
    }
    result += w * values[static_cast<std::size_t>(start + j)];
  }
  return result;
}

std::optional<double> hill_blowup_detector(const SampledFunction& K_of_theta, const PhasePoint& p,
                                           double nu, double horizon, const HillOptions& options) {
  if (!(K_of_theta.dtheta > 0.0)) throw ValidationError("sample spacing must be positive", "K_of_theta");
  if (K_of_theta.values.size() < 2) throw ValidationError("need at least two K samples", "K_of_theta");
  for (std::size_t i = 0; i < K_of_theta.values.size(); ++i) {
    const double k = K_of_theta.values[i];
    if (!(k > 0.0) || !std::isfinite(k)) {
      throw ValidationError("K sample " + std::to_string(i) + " is not positive and finite",
                            "K_of_theta");
    }
  }
  if (!(nu >= 0.0) || !std::isfinite(nu)) throw ValidationError("nu must be >= 0", "nu");
  const double u0 = p.u0();
  const double l0 = p.lambda0();

  using Vec3 = std::array<double, 3>;  // (t, z, z')
  const double theta0 = K_of_theta.theta0;
  const auto rhs = [&](const Vec3& y) -> Vec3 {
    const double K = K_of_theta(theta0 + y[0]);
    return {1.0, y[2], nu * y[2] - K * y[1]};
  };
  const auto f = [&](double t, double dz) { return dz - l0 * std::exp(nu * t); };

  const double end = std::min(horizon, K_of_theta.theta_end()) - theta0;
  const double h = K_of_theta.dtheta;
  const StepScheme scheme{SchemeKind::rk4, h};
  Vec3 y{0.0, 1.0, -u0};
  double f0 = f(0.0, y[2]);
  const long steps = static_cast<long>(std::floor(end / h + 1e-9));
  for (long i = 0; i < steps; ++i) {
    const Vec3 a = y;
    const Vec3 b = step(scheme, rhs, a).state;
    const double t0 = static_cast<double>(i) * h;
    const double t1 = static_cast<double>(i + 1) * h;
    const double f1 = f(t1, b[2]);
    if ((f0 > 0.0) != (f1 > 0.0) || f1 == 0.0) {
      // Hermite dense output of z' on [t0, t1] with slopes z''.
      const double dd0 = nu * a[2] - K_of_theta(theta0 + t0) * a[1];
      const double dd1 = nu * b[2] - K_of_theta(theta0 + t1) * b[1];
      const auto g = [&](double t) {
        return f(t, cubic_hermite(t0, t1, a[2], b[2], dd0, dd1, t).value);
      };
      double lo = t0;
      double hi = t1;
      const bool lo_positive = f0 > 0.0;
      while (hi - lo > options.bisection_tol) {
        const double mid = 0.5 * (lo + hi);
        if ((g(mid) > 0.0) == lo_positive) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      return theta0 + 0.5 * (lo + hi);
    }
    y = b;
    y[0] = t1;
    f0 = f1;
  }
  return std::nullopt;
}

}  // namespace coldplasma
