#pragma once

namespace coldplasma {

struct HermiteValue {
  double value = 0.0;
  double slope = 0.0;
};

// Cubic Hermite interpolant on [x0, x1] with end values f0, f1 and end
// slopes d0, d1, evaluated (value and derivative) at x.
inline HermiteValue cubic_hermite(double x0, double x1, double f0, double f1, double d0,
                                  double d1, double x) noexcept {
  const double h = x1 - x0;
  const double t = (x - x0) / h;
  const double t2 = t * t;
  const double t3 = t2 * t;
  const double value = (2 * t3 - 3 * t2 + 1) * f0 + (t3 - 2 * t2 + t) * h * d0 +
                       (-2 * t3 + 3 * t2) * f1 + (t3 - t2) * h * d1;
  const double slope = 6 * (t2 - t) * (f0 - f1) / h + (3 * t2 - 4 * t + 1) * d0 +
                       (3 * t2 - 2 * t) * d1;
  return {value, slope};
}

}  // namespace coldplasma
