#include <cmath>
#include <numbers>
#include <random>

#include "coldplasma/errors.hpp"
#include "coldplasma/hill.hpp"
#include "doctest.h"

using namespace coldplasma;
using doctest::Approx;

namespace {

SampledFunction constant(double K, double theta0, double dtheta, double end) {
  SampledFunction f{theta0, dtheta, {}};
  const auto n = static_cast<std::size_t>(std::lround((end - theta0) / dtheta)) + 1;
  f.values.assign(n, K);
  return f;
}

}  // namespace

TEST_CASE("sampled function interpolation") {
  SampledFunction f{1.0, 0.1, {}};
  for (int i = 0; i <= 20; ++i) {
    const double t = 1.0 + 0.1 * i;
    f.values.push_back(t * t * t - 2 * t);
  }
  CHECK(f.theta_end() == Approx(3.0));
  for (double t : {1.0, 1.03, 1.55, 2.91, 3.0}) CHECK(f(t) == Approx(t * t * t - 2 * t).epsilon(1e-12));
}

TEST_CASE("property: constant K, detector matches the closed form") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ua(-2.0, 0.9);
  std::uniform_real_distribution<double> ub(-3.0, 3.0);
  std::uniform_real_distribution<double> uK(0.3, 1.0);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  int compared = 0;
  for (int i = 0; i < 600; ++i) {
    const double K = uK(rng);
    const double nu = 1.8 * std::sqrt(K) * u01(rng);
    PhasePoint p{ua(rng), ub(rng), {}};
    if (std::abs(p.beta) < 1e-3) continue;
    const auto want = constant_K_blowup_time(p.u0(), p.lambda0(), nu, K, 30.0);
    const auto got = hill_blowup_detector(constant(K, 0.0, 0.01, 30.0), p, nu, 30.0);
    REQUIRE(want.has_value() == got.has_value());
    if (!want) continue;
    ++compared;
    CHECK(*got == Approx(*want).epsilon(1e-6).scale(1.0));

    // shifted origin: the answer is an absolute time
    const auto shifted = hill_blowup_detector(constant(K, 5.0, 0.01, 35.0), p, nu, 35.0);
    REQUIRE(shifted.has_value());
    CHECK(*shifted == Approx(5.0 + *want).epsilon(1e-6).scale(1.0));
  }
  CHECK(compared > 50);
}

TEST_CASE("no crossing near rest with strong friction") {
  const PhasePoint p{0.01, -0.02, {}};
  CHECK_FALSE(hill_blowup_detector(constant(0.99, 0.0, 0.01, 100.0), p, 4.0, 100.0).has_value());
  CHECK_FALSE(constant_K_blowup_time(p.u0(), p.lambda0(), 4.0, 0.99, 100.0).has_value());
}

TEST_CASE("horizon and sample errors") {
  const PhasePoint p{0.0, -2.0, {}};
  const auto tb = constant_K_blowup_time(p.u0(), p.lambda0(), 0.0, 1.0, 30.0);
  REQUIRE(tb.has_value());
  CHECK_FALSE(hill_blowup_detector(constant(1.0, 0.0, 0.01, 30.0), p, 0.0, 0.5 * *tb).has_value());

  SampledFunction bad = constant(1.0, 0.0, 0.01, 5.0);
  bad.values[100] = 0.0;
  CHECK_THROWS_AS(hill_blowup_detector(bad, p, 0.0, 5.0), ValidationError);
  bad.values[100] = NAN;
  CHECK_THROWS_AS(hill_blowup_detector(bad, p, 0.0, 5.0), ValidationError);
  CHECK_THROWS_AS(hill_blowup_detector(constant(1.0, 0.0, 0.01, 5.0), PhasePoint{0.3, 0.0, {}}, 0.0, 5.0),
                  NotApplicable);
}
