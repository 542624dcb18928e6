#include <cmath>

#include "coldplasma/errors.hpp"
#include "coldplasma/initial_data.hpp"
#include "doctest.h"

using namespace coldplasma;
using doctest::Approx;

TEST_CASE("gaussian profile coefficients") {
  const double a = 3.105;
  const double r = 4.5;
  // E0 = 0.4761 rho exp(-0.0987654321 rho^2)
  CHECK(gaussian_field(a, r, 1.0) == Approx(0.4761 * std::exp(-2.0 / 20.25)).epsilon(1e-12));
  CHECK(gaussian_field(a, r, 2.0) / 2.0 == Approx(0.4761 * std::exp(-0.0987654321 * 4.0)).epsilon(1e-9));
  CHECK(gaussian_field(a, r, 0.0) == 0.0);
  CHECK(gaussian_field(a, r, -1.7) == -gaussian_field(a, r, 1.7));
  // at d = 4.5 rho* the exponential factor is about 2.58e-18
  const double d = 20.25;
  CHECK(gaussian_field(a, r, d) / (0.4761 * d) == Approx(2.58e-18).epsilon(0.01));
  CHECK(gaussian_field(a, r, 1.0) == Approx(0.43133).epsilon(1e-5));
  CHECK_THROWS_AS(gaussian_field(a, 0.0, 1.0), ValidationError);
}

TEST_CASE("gaussian derivative matches a central difference") {
  for (double x : {-6.0, -2.0, -0.3, 0.0, 0.9, 3.1, 7.5}) {
    const double h = 1e-5;
    const double fd = (gaussian_field(3.105, 4.5, x + h) - gaussian_field(3.105, 4.5, x - h)) / (2 * h);
    CHECK(gaussian_field_derivative(3.105, 4.5, x) == Approx(fd).epsilon(1e-8).scale(1.0));
  }
  CHECK(gaussian_field_derivative(3.105, 4.5, 2.25) == Approx(0.0).scale(1.0).epsilon(1e-15));
}

TEST_CASE("peak field and its inverse") {
  const double peak = gaussian_peak_field(3.105, 4.5);
  CHECK(peak == Approx(std::abs(gaussian_field(3.105, 4.5, 2.25))).epsilon(1e-14));
  for (double x = 0.0; x < 10.0; x += 0.01) CHECK(std::abs(gaussian_field(3.105, 4.5, x)) <= peak * (1 + 1e-14));
  CHECK(gaussian_amplitude_for_peak(peak, 4.5) == Approx(3.105).epsilon(1e-14));
  CHECK(gaussian_peak_field(gaussian_amplitude_for_peak(0.05, 4.5), 4.5) == Approx(0.05).epsilon(1e-14));
  CHECK_THROWS_AS(gaussian_amplitude_for_peak(-1.0, 4.5), ValidationError);
}

TEST_CASE("evaluate gaussian data") {
  const InitialValues v = evaluate(GaussianProfile{}, 1.0);
  CHECK(v.P == 0.0);
  CHECK(v.dP == 0.0);
  CHECK(v.E == gaussian_field(3.105, 4.5, 1.0));
  CHECK(v.dE == gaussian_field_derivative(3.105, 4.5, 1.0));
}

TEST_CASE("tabulated data") {
  TabulatedProfile t;
  // E0 = x^3 - x, P0 = 0.5 x on [-2, 2]: cubic, so reproduced exactly
  for (double x = -2.0; x <= 2.0 + 1e-12; x += 0.5) {
    t.rho.push_back(x);
    t.E0.push_back(x * x * x - x);
    t.dE0.push_back(3 * x * x - 1);
    t.P0.push_back(0.5 * x);
    t.dP0.push_back(0.5);
  }
  CHECK_NOTHROW(validate_initial_data(t));
  for (double x : {-1.9, -0.77, 0.0, 0.5, 1.33}) {
    const InitialValues v = evaluate(t, x);
    CHECK(v.E == Approx(x * x * x - x).epsilon(1e-13).scale(1.0));
    CHECK(v.dE == Approx(3 * x * x - 1).epsilon(1e-13).scale(1.0));
    CHECK(v.P == Approx(0.5 * x).epsilon(1e-13).scale(1.0));
    CHECK(v.dP == Approx(0.5).epsilon(1e-13));
  }
  const InitialValues out = evaluate(t, 3.0);
  CHECK(out.E == 0.0);
  CHECK(out.P == 0.0);
  CHECK(out.dE == 0.0);

  TabulatedProfile bad = t;
  std::swap(bad.rho[1], bad.rho[2]);
  CHECK_THROWS_AS(validate_initial_data(bad), ValidationError);
  bad = t;
  bad.E0.pop_back();
  CHECK_THROWS_AS(validate_initial_data(bad), ValidationError);
  bad = t;
  bad.P0[3] = NAN;
  CHECK_THROWS_AS(validate_initial_data(bad), ValidationError);
}
