#include "coldplasma/initial_data.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "coldplasma/errors.hpp"
#include "coldplasma/hermite.hpp"

namespace coldplasma {

namespace {

void require_rho_star(double rho_star) {
  if (!(rho_star > 0.0) || !std::isfinite(rho_star)) {
    throw ValidationError("rho_star must be positive and finite", "rho_star");
  }
}

}  // namespace

double gaussian_field(double a_star, double rho_star, double rho) {
  require_rho_star(rho_star);
  const double c = (a_star / rho_star) * (a_star / rho_star);
  return c * rho * std::exp(-2.0 * rho * rho / (rho_star * rho_star));
}

double gaussian_field_derivative(double a_star, double rho_star, double rho) {
  require_rho_star(rho_star);
  const double c = (a_star / rho_star) * (a_star / rho_star);
  const double s2 = rho_star * rho_star;
  return c * std::exp(-2.0 * rho * rho / s2) * (1.0 - 4.0 * rho * rho / s2);
}

double gaussian_peak_field(double a_star, double rho_star) {
  return std::abs(gaussian_field(a_star, rho_star, 0.5 * rho_star));
}

double gaussian_amplitude_for_peak(double peak, double rho_star) {
  require_rho_star(rho_star);
  if (!(peak >= 0.0)) throw ValidationError("peak field must be non-negative", "peak");
  // peak = a^2 / rho_star^2 * (rho_star / 2) * e^{-1/2}
  return std::sqrt(peak * 2.0 * rho_star * std::exp(0.5));
}

void validate_initial_data(const InitialData& data) {
  if (const auto* g = std::get_if<GaussianProfile>(&data)) {
    require_rho_star(g->rho_star);
    if (!std::isfinite(g->a_star)) throw ValidationError("a_star must be finite", "a_star");
    return;
  }
  const auto& t = std::get<TabulatedProfile>(data);
  const std::size_t n = t.rho.size();
  if (n < 2) throw ValidationError("tabulated profile needs at least 2 nodes", "table");
  if (t.E0.size() != n || t.P0.size() != n || t.dE0.size() != n || t.dP0.size() != n) {
    throw ValidationError("tabulated columns differ in length", "table");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(t.rho[i]) || !std::isfinite(t.E0[i]) || !std::isfinite(t.P0[i]) ||
        !std::isfinite(t.dE0[i]) || !std::isfinite(t.dP0[i])) {
      throw ValidationError("tabulated profile has a non-finite entry at row " +
                                std::to_string(i + 1),
                            "table");
    }
    if (i > 0 && !(t.rho[i] > t.rho[i - 1])) {
      throw ValidationError("tabulated rho must be strictly increasing", "table");
    }
  }
}

InitialValues evaluate(const InitialData& data, double rho) {
  if (const auto* g = std::get_if<GaussianProfile>(&data)) {
    return {gaussian_field(g->a_star, g->rho_star, rho), 0.0,
            gaussian_field_derivative(g->a_star, g->rho_star, rho), 0.0};
  }
  const auto& t = std::get<TabulatedProfile>(data);
  if (t.rho.empty() || rho < t.rho.front() || rho > t.rho.back()) return {};
  auto it = std::upper_bound(t.rho.begin(), t.rho.end(), rho);
  std::size_t k = static_cast<std::size_t>(it - t.rho.begin());
  if (k == t.rho.size()) k = t.rho.size() - 1;
  const std::size_t j = k - 1;
  const HermiteValue e = cubic_hermite(t.rho[j], t.rho[k], t.E0[j], t.E0[k], t.dE0[j], t.dE0[k], rho);
  const HermiteValue p = cubic_hermite(t.rho[j], t.rho[k], t.P0[j], t.P0[k], t.dP0[j], t.dP0[k], rho);
  return {e.value, p.value, e.slope, p.slope};
}

}  // namespace coldplasma
