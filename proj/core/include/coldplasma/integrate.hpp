#pragma once

// Fixed-step explicit integrators over small dense state vectors.
//
// A state is any copyable random-access container of doubles with size()
// (std::array<double, N> or std::vector<double>). The rhs is a callable
// State(const State&). Nothing here allocates beyond copies of the state.

#include <cmath>
#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

#include "coldplasma/errors.hpp"

namespace coldplasma {

enum class SchemeKind { euler, rk4 };

struct StepScheme {
  SchemeKind kind = SchemeKind::rk4;
  double tau = 0.01;

  void validate() const {
    if (!(tau > 0.0) || !std::isfinite(tau)) {
      throw ValidationError("tau must be positive and finite", "tau");
    }
  }
};

template <class State>
struct StepResult {
  State state{};
  // 0 when every stage was finite, otherwise the 1-based index of the first
  // stage whose derivative (or the final update) was non-finite.
  int failed_stage = 0;

  bool ok() const noexcept { return failed_stage == 0; }
};

namespace detail {

template <class State>
bool all_finite(const State& s) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!std::isfinite(s[i])) return false;
  }
  return true;
}

// out = a + c * b
template <class State>
void axpy_into(State& out, const State& a, double c, const State& b) {
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + c * b[i];
}

}  // namespace detail

template <class State, class Rhs>
StepResult<State> step(const StepScheme& scheme, Rhs&& rhs, const State& s) {
  const double tau = scheme.tau;
  StepResult<State> result{s, 0};
  State& y = result.state;

  if (scheme.kind == SchemeKind::euler) {
    const State k1 = rhs(s);
    if (!detail::all_finite(k1)) {
      result.failed_stage = 1;
      return result;
    }
    detail::axpy_into(y, s, tau, k1);
    if (!detail::all_finite(y)) result.failed_stage = 1;
    return result;
  }

  State tmp = s;
  const State k1 = rhs(s);
  if (!detail::all_finite(k1)) {
    result.failed_stage = 1;
    return result;
  }
  detail::axpy_into(tmp, s, 0.5 * tau, k1);
  const State k2 = rhs(tmp);
  if (!detail::all_finite(k2)) {
    result.failed_stage = 2;
    return result;
  }
  detail::axpy_into(tmp, s, 0.5 * tau, k2);
  const State k3 = rhs(tmp);
  if (!detail::all_finite(k3)) {
    result.failed_stage = 3;
    return result;
  }
  detail::axpy_into(tmp, s, tau, k3);
  const State k4 = rhs(tmp);
  if (!detail::all_finite(k4)) {
    result.failed_stage = 4;
    return result;
  }
  const double w = tau / 6.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    y[i] = s[i] + w * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  if (!detail::all_finite(y)) result.failed_stage = 4;
  return result;
}

// Thrown when a fixed-step run cannot complete because a stage went
// non-finite.
class StepFailure : public std::runtime_error {
 public:
  StepFailure(const std::string& message, int stage, double theta)
      : std::runtime_error(message), stage_(stage), theta_(theta) {}

  int stage() const noexcept { return stage_; }
  double theta() const noexcept { return theta_; }

 private:
  int stage_;
  double theta_;
};

// Advances s0 over `horizon` with an integral number of steps of size tau.
template <class State, class Rhs>
State integrate_fixed(const StepScheme& scheme, Rhs&& rhs, const State& s0,
                      double horizon) {
  scheme.validate();
  const double ratio = horizon / scheme.tau;
  const long n = std::lround(ratio);
  if (n < 0 || std::abs(ratio - static_cast<double>(n)) > 1e-9 * std::max(1.0, ratio)) {
    throw ValidationError("horizon must be a non-negative multiple of tau", "horizon");
  }
  State s = s0;
  for (long i = 0; i < n; ++i) {
    auto r = step(scheme, rhs, s);
    if (!r.ok()) {
      throw StepFailure("non-finite stage during fixed-step integration",
                        r.failed_stage, static_cast<double>(i) * scheme.tau);
    }
    s = std::move(r.state);
  }
  return s;
}

struct OrderEstimate {
  // nullopt when both errors vanish (the scheme is exact on the problem).
  std::optional<double> order;
  double err_coarse = 0.0;
  double err_fine = 0.0;

  bool exact() const noexcept { return !order.has_value(); }
};

// Richardson-style order estimate: max-norm errors of runs at tau and tau/2,
// both measured against a tau/8 reference, and their log2 ratio.
template <class State, class Rhs>
OrderEstimate measured_order(const StepScheme& scheme, Rhs&& rhs, const State& s0,
                             double horizon) {
  scheme.validate();
  StepScheme half = scheme;
  half.tau = scheme.tau / 2.0;
  StepScheme ref = scheme;
  ref.tau = scheme.tau / 8.0;

  const State reference = integrate_fixed(ref, rhs, s0, horizon);
  const State coarse = integrate_fixed(scheme, rhs, s0, horizon);
  const State fine = integrate_fixed(half, rhs, s0, horizon);

  OrderEstimate est;
  for (std::size_t i = 0; i < s0.size(); ++i) {
    est.err_coarse = std::max(est.err_coarse, std::abs(coarse[i] - reference[i]));
    est.err_fine = std::max(est.err_fine, std::abs(fine[i] - reference[i]));
  }
  if (est.err_coarse == 0.0 && est.err_fine == 0.0) return est;
  if (est.err_fine == 0.0) {
    est.order = std::numeric_limits<double>::infinity();
    return est;
  }
  est.order = std::log2(est.err_coarse / est.err_fine);
  return est;
}

}  // namespace coldplasma
