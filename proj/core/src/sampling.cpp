#include "coldplasma/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "coldplasma/errors.hpp"
#include "coldplasma/hermite.hpp"

namespace coldplasma {

namespace {

void require_ordered(const Ensemble& e) {
  for (std::size_t k = 0; k + 1 < e.size(); ++k) {
    if (!(e.position(k + 1) > e.position(k))) {
      throw InvalidState("particle positions are not strictly increasing at index " +
                         std::to_string(k + 1));
    }
  }
}

void require_inside(const Ensemble& e, double rho) {
  if (e.size() < 2) throw InvalidState("ensemble has fewer than two particles");
  if (!(rho >= e.position(0) && rho <= e.position(e.size() - 1))) {
    throw OutOfRange("query " + std::to_string(rho) + " outside particle hull [" +
                     std::to_string(e.position(0)) + ", " +
                     std::to_string(e.position(e.size() - 1)) + "]");
  }
}

}  // namespace

namespace detail {

FieldSample hermite_sample_unchecked(const Ensemble& e, double rho) {
  const auto& ps = e.particles;
  // first particle strictly to the right of rho
  auto it = std::upper_bound(ps.begin(), ps.end(), rho,
                             [](double r, const ParticleState& p) { return r < p.position(); });
  std::size_t k = static_cast<std::size_t>(it - ps.begin());
  if (k == ps.size()) k = ps.size() - 1;
  if (k == 0) k = 1;
  const ParticleState& a = ps[k - 1];
  const ParticleState& b = ps[k];
  const double x0 = a.position();
  const double x1 = b.position();
  if (rho == x0) return {rho, a.P, a.R, a.Q, a.D, 1.0 - a.D};
  if (rho == x1) return {rho, b.P, b.R, b.Q, b.D, 1.0 - b.D};
  const HermiteValue p = cubic_hermite(x0, x1, a.P, b.P, a.Q, b.Q, rho);
  const HermiteValue f = cubic_hermite(x0, x1, a.R, b.R, a.D, b.D, rho);
  return {rho, p.value, f.value, p.slope, f.slope, 1.0 - f.slope};
}

}  // namespace detail

FieldSample hermite_sample(const Ensemble& e, double rho_query) {
  require_inside(e, rho_query);
  require_ordered(e);
  return detail::hermite_sample_unchecked(e, rho_query);
}

SnapshotTable snapshot(const Ensemble& e, const std::vector<double>& queries) {
  SnapshotTable table;
  table.theta = e.theta;
  if (!std::is_sorted(queries.begin(), queries.end())) {
    throw ValidationError("snapshot queries must be sorted", "queries");
  }
  if (e.size() < 2) throw InvalidState("ensemble has fewer than two particles");
  require_ordered(e);
  double min_h = e.position(1) - e.position(0);
  for (std::size_t k = 1; k + 1 < e.size(); ++k) {
    min_h = std::min(min_h, e.position(k + 1) - e.position(k));
  }
  table.min_h = min_h;
  table.degraded = min_h < 1e-3 * e.h0;
  table.rows.reserve(queries.size());
  const double lo = e.position(0);
  const double hi = e.position(e.size() - 1);
  for (double q : queries) {
    if (!(q >= lo && q <= hi)) {
      table.skipped.push_back(q);
      continue;
    }
    table.rows.push_back(detail::hermite_sample_unchecked(e, q));
  }
  return table;
}

std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 1) throw ValidationError("point count must be positive", "points");
  std::vector<double> out(static_cast<std::size_t>(n));
  if (n == 1) {
    out[0] = lo;
    return out;
  }
  const double step = (hi - lo) / (n - 1);
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = lo + i * step;
  out.back() = hi;
  return out;
}

}  // namespace coldplasma
