#include <cmath>
#include <limits>
#include <random>

#include "coldplasma/dynamics.hpp"
#include "coldplasma/errors.hpp"
#include "doctest.h"

using namespace coldplasma;
using doctest::Approx;

namespace {

// Written out from the equations again, without the library's helpers.
StateDerivative oracle_rhs(double P, double R, double Q, double D, double nu) {
  const double K = std::pow(1.0 + P * P, -1.5);
  return {-R - nu * P, P / std::sqrt(1.0 + P * P), -D - K * Q * Q - nu * Q, (1.0 - D) * K * Q};
}

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

TEST_CASE("lorentz velocity") {
  CHECK(lorentz_velocity(0.0) == 0.0);
  CHECK(lorentz_velocity(1.0) == Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(lorentz_velocity(-3.0) == Approx(-3.0 / std::sqrt(10.0)).epsilon(1e-15));
  CHECK(std::abs(lorentz_velocity(1e8)) <= 1.0);
  CHECK(std::abs(lorentz_velocity(1e3)) < 1.0);
  CHECK(lorentz_velocity(0.5) < lorentz_velocity(0.6));
  CHECK_THROWS_AS(lorentz_velocity(kNaN), DomainError);
  CHECK_THROWS_AS(lorentz_velocity(kInf), DomainError);
}

TEST_CASE("kappa") {
  CHECK(kappa(0.0) == 1.0);
  CHECK(kappa(std::sqrt(3.0)) == Approx(0.125).epsilon(1e-14));
  CHECK(kappa(2.5) == kappa(-2.5));
  CHECK(kappa(40.0) > 0.0);
  CHECK_THROWS_AS(kappa(kNaN), DomainError);
}

TEST_CASE("energy functional and its bound") {
  CHECK(energy_functional(0.0, 0.0) == 2.0);
  CHECK(energy_functional(0.0, 0.3) == Approx(2.09));
  CHECK_THROWS_AS(energy_functional(kNaN, 0.0), DomainError);

  const EnergyBound rest = kappa_lower_bound(0.0, 0.0);
  CHECK(rest.Kminus == 1.0);
  CHECK(rest.Kplus == 1.0);

  const EnergyBound b = kappa_lower_bound(0.0, 0.43133);
  CHECK(b.calE0 == Approx(2.18605).epsilon(1e-5));
  CHECK(b.Kminus == Approx(0.76573).epsilon(1e-4));

  double prev = 1.0;
  for (double e = 0.0; e < 3.0; e += 0.1) {
    const double k = kappa_lower_bound(0.0, e).Kminus;
    CHECK(k <= prev);
    prev = k;
  }
}

TEST_CASE("characteristic rhs examples") {
  for (double nu : {0.0, 0.3, 4.0}) {
    const StateDerivative d = characteristic_rhs({0.0, 0.0, 0.0, 0.0, 0.0}, nu);
    CHECK(d == StateDerivative{0.0, 0.0, 0.0, 0.0});
  }
  const StateDerivative d = characteristic_rhs({0.0, 0.0, 1.0, 0.0, 0.0}, 0.0);
  CHECK(d == StateDerivative{-1.0, 0.0, 0.0, 0.0});
  CHECK_THROWS_AS(characteristic_rhs({0.0, kNaN, 0.0, 0.0, 0.0}, 0.0), DomainError);
  CHECK_THROWS_AS(characteristic_rhs({0.0, 0.0, 0.0, 0.0, 0.0}, -0.1), DomainError);
  CHECK_THROWS_AS(characteristic_rhs({0.0, 0.0, 0.0, 0.0, 0.0}, kInf), DomainError);
}

TEST_CASE("property: rhs against an independent oracle and its symmetries") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  std::uniform_real_distribution<double> unu(0.0, 3.0);
  for (int i = 0; i < 2000; ++i) {
    const double P = u(rng);
    const double R = u(rng);
    const double Q = u(rng);
    const double D = u(rng);
    const double nu = unu(rng);
    const StateDerivative got = characteristic_rhs({0.7, P, R, Q, D}, nu);
    const StateDerivative want = oracle_rhs(P, R, Q, D, nu);
    CHECK(got.dP == Approx(want.dP).epsilon(1e-14));
    CHECK(got.dR == Approx(want.dR).epsilon(1e-14));
    CHECK(got.dQ == Approx(want.dQ).epsilon(1e-13));
    CHECK(got.dD == Approx(want.dD).epsilon(1e-13));
    CHECK(got == detail::characteristic_rhs_unchecked(P, R, Q, D, nu));
    CHECK(std::abs(got.dR) < 1.0);

    // rho -> -rho flips P and R and leaves the slopes Q, D alone
    const StateDerivative m = characteristic_rhs({0.0, -P, -R, Q, D}, nu);
    CHECK(m.dP == -got.dP);
    CHECK(m.dR == -got.dR);
    CHECK(m.dQ == got.dQ);
    CHECK(m.dD == got.dD);

    // d calE / d theta = -2 nu P^2 / sqrt(1 + P^2), zero without friction
    const double g = std::sqrt(1.0 + P * P);
    const double rate = 2.0 * P / g * got.dP + 2.0 * R * got.dR;
    const double want_rate = -2.0 * nu * P * P / g;
    CHECK(rate == Approx(want_rate).epsilon(1e-12).scale(1.0 + std::abs(R) + std::abs(P)));
    CHECK(rate <= 1e-12);
  }
}
