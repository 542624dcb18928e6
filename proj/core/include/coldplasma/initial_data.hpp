#pragma once

#include <variant>
#include <vector>

namespace coldplasma {

// E0(rho) = (a_star / rho_star)^2 rho exp(-2 rho^2 / rho_star^2), P0 = 0.
struct GaussianProfile {
  double a_star = 3.105;
  double rho_star = 4.5;
};

// Tabulated E0, P0 with slopes on strictly increasing nodes. Values between
// nodes come from cubic Hermite interpolation; outside the table the data
// are zero (the profile is assumed compactly supported inside it).
struct TabulatedProfile {
  std::vector<double> rho;
  std::vector<double> E0;
  std::vector<double> P0;
  std::vector<double> dE0;
  std::vector<double> dP0;
};

using InitialData = std::variant<GaussianProfile, TabulatedProfile>;

struct InitialValues {
  double E = 0.0;
  double P = 0.0;
  double dE = 0.0;  // D0
  double dP = 0.0;  // Q0
};

double gaussian_field(double a_star, double rho_star, double rho);
double gaussian_field_derivative(double a_star, double rho_star, double rho);

// Largest |E0| of the Gaussian profile, attained at rho = rho_star / 2.
double gaussian_peak_field(double a_star, double rho_star);

// a_star that gives the requested peak |E0| at fixed rho_star.
double gaussian_amplitude_for_peak(double peak, double rho_star);

void validate_initial_data(const InitialData& data);

InitialValues evaluate(const InitialData& data, double rho);

}  // namespace coldplasma
