#include "coldplasma/units.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "coldplasma/errors.hpp"

namespace coldplasma {

namespace {

void require_positive(double v, const char* field) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw ValidationError(std::string(field) + " must be positive and finite", field);
  }
}

}  // namespace

void PlasmaParams::validate() const {
  if (Z < 1) throw ValidationError("Z must be an integer >= 1", "Z");
  require_positive(N0e, "N0e");
  require_positive(Te, "Te");
  if (!(lnLambda >= 0.0) || !std::isfinite(lnLambda)) {
    throw ValidationError("lnLambda must be non-negative and finite", "lnLambda");
  }
  require_positive(n0, "n0");
}

double eta(const PlasmaParams& params) {
  params.validate();
  return cgs::e2_eV_cm * std::cbrt(params.N0e) / params.Te;
}

double collision_frequency(const PlasmaParams& params) {
  const double e = eta(params);
  return params.Z * (std::sqrt(8.0) / 3.0) * std::pow(e, 1.5) * params.lnLambda;
}

double coulomb_logarithm(double ne, double Te) {
  require_positive(ne, "N0e");
  require_positive(Te, "Te");
  return 24.0 - std::log(std::sqrt(ne) / Te);
}

DimensionlessScales dimensionless_scales(double n0) {
  require_positive(n0, "n0");
  const double e = cgs::electron_charge;
  const double omega = std::sqrt(4.0 * std::numbers::pi * e * e * n0 / cgs::electron_mass);
  return {omega, omega / cgs::speed_of_light};
}

}  // namespace coldplasma
