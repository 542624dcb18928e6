#pragma once

// Physical plasma parameters to dimensionless model inputs (CGS-Gaussian).

namespace coldplasma {

namespace cgs {
// CODATA 2018 values.
inline constexpr double electron_charge = 4.80320471e-10;       // statC
inline constexpr double electron_mass = 9.1093837015e-28;       // g
inline constexpr double speed_of_light = 2.99792458e10;         // cm/s
// e^2 in eV cm (1.44e-7 to the precision used for the coupling parameter).
inline constexpr double e2_eV_cm = 1.44e-7;
}  // namespace cgs

struct PlasmaParams {
  int Z = 1;
  double N0e = 1e18;      // electron density, cm^-3
  double Te = 50.0;       // electron temperature, eV
  double lnLambda = 10.0; // Coulomb logarithm
  double n0 = 1e18;       // density used for omega_p and k_p, cm^-3

  // Throws ValidationError naming the offending field.
  void validate() const;
};

// eta = e^2 N0e^{1/3} / Te: interaction energy at the mean spacing over Te.
double eta(const PlasmaParams& params);

// nu = Z (sqrt 8 / 3) eta^{3/2} lnLambda, in units of omega_p.
double collision_frequency(const PlasmaParams& params);

// Electron-ion estimate lnLambda = 24 - ln(sqrt(ne) / Te), ne in cm^-3 and
// Te in eV (valid for Te above roughly 10 Z^2 eV).
double coulomb_logarithm(double ne, double Te);

struct DimensionlessScales {
  double omega_p = 0.0;  // s^-1
  double k_p = 0.0;      // cm^-1
};

DimensionlessScales dimensionless_scales(double n0);

}  // namespace coldplasma
