#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "coldplasma/errors.hpp"
#include "coldplasma/limiters.hpp"
#include "coldplasma/sampling.hpp"
#include "doctest.h"

using namespace coldplasma;
using doctest::Approx;

namespace {

PhasePoint gaussian_point(double rho0) {
  const InitialValues v = evaluate(GaussianProfile{}, rho0);
  return make_phase_point(v.dE, v.dP, v.P, v.E);
}

}  // namespace

TEST_CASE("quadrants") {
  CHECK(quadrant_of(-1.0, 1.0) == Quadrant::I);
  CHECK(quadrant_of(1.0, 1.0) == Quadrant::II);
  CHECK(quadrant_of(1.0, -1.0) == Quadrant::III);
  CHECK(quadrant_of(-1.0, -1.0) == Quadrant::IV);
  CHECK(std::string(to_string(Quadrant::III)) == "III");
}

TEST_CASE("sigma labels and outer chain") {
  CHECK(to_string(SigmaLabel{KIndex::p, KIndex::m}) == "Sigma_pm");
  CHECK(to_string(SigmaLabel{KIndex::m, KIndex::m}) == "Sigma_mm");
  const double s = sigma({KIndex::m, KIndex::p}, -0.5, 0.3, 0.2, 0.5);
  CHECK(s == Approx(-0.2 * 0.3 / (1.5 * 0.5) + 0.5 / 1.5 - 0.09 / 1.5));
  CHECK(psi_qdp(-0.5, 0.3, 1.0, 0.2) == Approx(sigma({KIndex::p, KIndex::p}, -0.5, 0.3, 0.2, 0.5)));

  for (auto q : {Quadrant::I, Quadrant::II, Quadrant::III, Quadrant::IV}) {
    const SigmaLabel l = outer_limiter_label(q);
    CHECK(l.friction == KIndex::p);
    CHECK(l.field == ((q == Quadrant::I || q == Quadrant::III) ? KIndex::m : KIndex::p));
  }
}

TEST_CASE("property: sigma bounds enclose the true slope") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> uD(-4.0, 0.99);
  std::uniform_real_distribution<double> uQ(-4.0, 4.0);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int i = 0; i < 20000; ++i) {
    const double D = uD(rng);
    const double Q = uQ(rng);
    const double Km = 0.02 + 0.98 * u01(rng);
    const double nu = 1.5 * u01(rng);
    const SigmaBounds b = sigma_bounds(D, Q, nu, Km);
    CHECK(b.lower_value <= b.upper_value);
    for (double K : {Km, 0.5 * (Km + 1.0), 1.0, Km + (1 - Km) * u01(rng)}) {
      const double psi = psi_qdp(D, Q, K, nu);
      const double slack = 1e-12 * (1.0 + std::abs(psi));
      CHECK(psi >= b.lower_value - slack);
      CHECK(psi <= b.upper_value + slack);
    }
  }
}

TEST_CASE("limiter trace rejects bad starts") {
  CHECK_THROWS_AS(limiter_trace(PhasePoint{0.0, 0.0, {}}, 0.0), ValidationError);
  CHECK_THROWS_AS(limiter_trace(PhasePoint{1.0, -0.2, {}}, 0.0), ValidationError);
  const PhasePoint p{0.2, -0.2, {2.2, 0.75, 1.0}};
  CHECK_THROWS_AS(limiter_trace(p, -0.1), ValidationError);
  CHECK_THROWS_AS(limiter_trace(p, 2.0 * std::sqrt(0.75)), ValidationError);
  LimiterOptions o;
  o.method = LimiterMethod::closed_form;
  CHECK_THROWS_AS(limiter_trace(p, 0.1, o), NotApplicable);
}

TEST_CASE("segments join on the axes and the count follows the rule") {
  for (double rho0 : {-2.5, -0.9, 0.3, 1.0, 1.8, 4.0}) {
    const LimiterTrace t = limiter_trace(gaussian_point(rho0), 0.0);
    REQUIRE_FALSE(t.segments.empty());
    CHECK(t.lifetime_bound == Approx(2 * std::numbers::pi * t.revolutions));
    CHECK(t.crossings.size() + 1 >= t.segments.size());
    for (std::size_t i = 0; i + 1 < t.segments.size(); ++i) {
      const auto& a = t.segments[i];
      const auto& b = t.segments[i + 1];
      REQUIRE_FALSE(a.D.empty());
      REQUIRE_FALSE(b.D.empty());
      CHECK(a.D.back() == Approx(b.D.front()).epsilon(1e-9).scale(1.0));
      CHECK(a.Q.back() == Approx(b.Q.front()).epsilon(1e-9).scale(1.0));
      CHECK((a.D.back() == 0.0 || a.Q.back() == 0.0));
      CHECK(b.quadrant != a.quadrant);
      CHECK(to_string(b.label) == to_string(outer_limiter_label(b.quadrant)));
    }
    for (const auto& c : t.crossings) {
      if (c.from == Quadrant::II && c.to == Quadrant::III && t.stop != LimiterStop::half_line) {
        CHECK(c.D < 0.5);
      }
    }
  }
}

TEST_CASE("nu = 0: closed form and numeric traces agree") {
  LimiterOptions cf;
  cf.method = LimiterMethod::closed_form;
  for (double rho0 : {-3.0, -1.0, 0.5, 0.9, 2.0, 5.0}) {
    const PhasePoint p = gaussian_point(rho0);
    const LimiterTrace a = limiter_trace(p, 0.0);
    const LimiterTrace b = limiter_trace(p, 0.0, cf);
    CHECK(a.revolutions == b.revolutions);
    CHECK(a.stop == b.stop);
    REQUIRE(a.crossings.size() == b.crossings.size());
    for (std::size_t i = 0; i < a.crossings.size(); ++i) {
      CHECK(a.crossings[i].from == b.crossings[i].from);
      CHECK(a.crossings[i].D == Approx(b.crossings[i].D).epsilon(1e-6).scale(1.0));
      CHECK(a.crossings[i].Q == Approx(b.crossings[i].Q).epsilon(1e-6).scale(1.0));
    }
    // each numeric segment keeps (K_j Q^2 + D^2) / (1 - D)^2
    for (const auto& s : a.segments) {
      const double Kj = s.label.field == KIndex::m ? p.bound.Kminus : 1.0;
      for (std::size_t i = 0; i < s.D.size(); ++i) {
        const double inv = (Kj * s.Q[i] * s.Q[i] + s.D[i] * s.D[i]) / ((1 - s.D[i]) * (1 - s.D[i]));
        CHECK(inv == Approx(s.C).epsilon(1e-6));
      }
    }
  }
}

TEST_CASE("guaranteed revolutions") {
  RunConfig c;
  const auto rho = linspace(-c.d, c.d, 400);
  const RevolutionBound b = guaranteed_revolutions(c, rho);
  REQUIRE(b.n_min.has_value());
  CHECK(*b.n_min == 3);
  CHECK(b.lifetime_bound == Approx(6 * std::numbers::pi));
  REQUIRE_FALSE(b.worst_rho.empty());
  for (double r : b.worst_rho) {
    CHECK(std::abs(r) > 0.69 - 0.11);
    CHECK(std::abs(r) < 1.2 + 0.11);
  }
  CHECK(b.samples.size() == rho.size());

  RunConfig rest;
  rest.initial_data = GaussianProfile{0.0, 4.5};
  const RevolutionBound r = guaranteed_revolutions(rest, linspace(-5, 5, 21));
  CHECK_FALSE(r.n_min.has_value());
  for (const auto& s : r.samples) CHECK(s.unbounded);
}

TEST_CASE("property: friction does not reduce the guaranteed count") {
  RunConfig c;
  const auto rho = linspace(-c.d, c.d, 201);
  int prev = 0;
  for (double nu : {0.0, 0.005, 0.01}) {
    c.nu = nu;
    const RevolutionBound b = guaranteed_revolutions(c, rho);
    REQUIRE(b.n_min.has_value());
    CHECK(*b.n_min >= prev);
    prev = *b.n_min;
  }
}

TEST_CASE("an invalid sample surfaces as an exception") {
  RunConfig c;
  c.nu = 1.9;  // above 2 sqrt(K-) for the strongest characteristics
  CHECK_THROWS_AS(guaranteed_revolutions(c, linspace(-3, 3, 31)), ValidationError);
}
