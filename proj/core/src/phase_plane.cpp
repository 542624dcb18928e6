#include "coldplasma/phase_plane.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "coldplasma/errors.hpp"

namespace coldplasma {

namespace {

void require_beta(const PhasePoint& p) {
  if (p.beta == 0.0) throw NotApplicable("u0 and lambda0 are undefined for beta = 0");
}

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) throw DomainError(fmt::format("{} must be finite", name));
}

struct ZValue {
  double z;
  double dz;
};

// z'' - nu z' + K z = 0, z(0) = 1, z'(0) = -u0.
ZValue z_solution(double u0, double nu, double K, double theta) {
  const double half = 0.5 * nu;
  const double disc = K - half * half;
  const double c = -u0 - half;
  const double e = std::exp(half * theta);
  const double scale = std::max(K, half * half);
  if (std::abs(disc) <= 1e-14 * scale) {
    const double z = e * (1.0 + c * theta);
    return {z, half * z + e * c};
  }
  if (disc > 0.0) {
    const double w = std::sqrt(disc);
    const double b = c / w;
    const double cs = std::cos(w * theta);
    const double sn = std::sin(w * theta);
    const double z = e * (cs + b * sn);
    return {z, half * z + e * w * (b * cs - sn)};
  }
  const double k = std::sqrt(-disc);
  const double b = c / k;
  const double ch = std::cosh(k * theta);
  const double sh = std::sinh(k * theta);
  const double z = e * (ch + b * sh);
  return {z, half * z + e * k * (sh + b * ch)};
}

void require_nondegenerate(double nu, double K) {
  const double disc = K - 0.25 * nu * nu;
  if (std::abs(disc) <= 1e-12 * std::max(K, 0.25 * nu * nu)) {
    throw DomainError(fmt::format("degenerate frequency: nu = 2 sqrt(K) at K = {}", K));
  }
}

}  // namespace

double PhasePoint::u0() const {
  require_beta(*this);
  return alpha / beta;
}

double PhasePoint::lambda0() const {
  require_beta(*this);
  return (1.0 - alpha) / beta;
}

PhasePoint make_phase_point(double alpha, double beta, double P0, double E0) {
  require_finite(alpha, "alpha");
  require_finite(beta, "beta");
  return {alpha, beta, kappa_lower_bound(P0, E0)};
}

bool cond0(double alpha, double beta) { return beta * beta + 2.0 * alpha - 1.0 < 0.0; }

const char* to_string(VerdictKind k) noexcept {
  switch (k) {
    case VerdictKind::guaranteed_smooth_one_revolution:
      return "guaranteed_smooth_one_revolution";
    case VerdictKind::guaranteed_blowup_first_revolution:
      return "guaranteed_blowup_first_revolution";
    case VerdictKind::undecided:
      return "undecided";
  }
  return "unknown";
}

const char* to_string(TMinusMode m) noexcept {
  return m == TMinusMode::literal ? "literal" : "reciprocal_root";
}

const char* to_string(BlowupCondition c) noexcept {
  return c == BlowupCondition::quadratic ? "quadratic" : "rigorous";
}

double T_minus(const PhasePoint& p, double nu, TMinusMode mode) {
  require_beta(p);
  const double Km = p.bound.Kminus;
  if (!(nu >= 0.0) || !(nu < 2.0 * std::sqrt(Km))) {
    throw NotApplicable("T_minus requires 0 <= nu < 2 sqrt(K-)");
  }
  const double w2 = Km - 0.25 * nu * nu;
  const double w = std::sqrt(w2);
  const double angle = std::numbers::pi / 2.0 - std::atan((p.u0() + 0.5 * nu) / w);
  const double prefactor = mode == TMinusMode::literal ? 1.0 / w2 : 1.0 / w;
  return prefactor * angle;
}

Verdict first_revolution_verdict(const PhasePoint& p, double nu, const VerdictOptions& options) {
  require_finite(nu, "nu");
  if (!(nu >= 0.0 && nu < 2.0)) throw NotApplicable("first-revolution predicates require 0 <= nu < 2");

  const double a = p.alpha;
  const double b = p.beta;
  const double c0 = b * b + 2.0 * a - 1.0;
  if (c0 < 0.0 && (b < 0.0 || (b == 0.0 && a > 0.0))) {
    return {VerdictKind::guaranteed_smooth_one_revolution,
            fmt::format("beta^2 + 2 alpha - 1 = {:.17g} < 0 with beta = {:.17g}, alpha = {:.17g}",
                        c0, b, a),
            c0};
  }
  if (b == 0.0) return {VerdictKind::undecided, "beta = 0 outside the smooth branch", c0};

  const double Km = p.bound.Kminus;
  if (!(nu < 2.0 * std::sqrt(Km))) {
    throw NotApplicable("blow-up predicate requires nu < 2 sqrt(K-)");
  }
  const double T = T_minus(p, nu, options.tminus);
  const double growth = std::exp(nu * T);
  const double w2 = Km - 0.25 * nu * nu;

  if (options.blowup == BlowupCondition::quadratic) {
    const double lhs = b * b + growth / Km * (2.0 * a - 1.0) + (1.0 / w2 - growth / Km) * a * a;
    if (lhs > 0.0) {
      return {VerdictKind::guaranteed_blowup_first_revolution,
              fmt::format("beta^2 + e^(nu T)/K- (2 alpha - 1) + (1/(K- - nu^2/4) - e^(nu T)/K-) "
                          "alpha^2 = {:.17g} > 0 (T = {:.17g}, K- = {:.17g})",
                          lhs, T, Km),
              lhs};
    }
    return {VerdictKind::undecided, "no sufficient condition holds", lhs};
  }

  if (!(b < 0.0 && a < 1.0)) return {VerdictKind::undecided, "rigorous blow-up test needs beta < 0, alpha < 1", 0.0};
  const double shifted = a + 0.5 * nu * b;
  const double lhs = w2 * b * b + shifted * shifted - growth * (1.0 - a) * (1.0 - a);
  if (lhs > 0.0) {
    return {VerdictKind::guaranteed_blowup_first_revolution,
            fmt::format("w^2 beta^2 + (alpha + nu beta/2)^2 - e^(nu T) (1 - alpha)^2 = {:.17g} > 0 "
                        "(T = {:.17g}, K- = {:.17g})",
                        lhs, T, Km),
            lhs};
  }
  return {VerdictKind::undecided, "no sufficient condition holds", lhs};
}

ConstantKState constant_K_solution(double u0, double lambda0, double nu, double K, double theta) {
  require_finite(u0, "u0");
  require_finite(lambda0, "lambda0");
  require_finite(nu, "nu");
  require_finite(theta, "theta");
  if (!(K > 0.0) || !std::isfinite(K)) throw DomainError("K must be positive and finite");
  if (nu < 0.0) throw DomainError("nu must be non-negative");
  const ZValue zv = z_solution(u0, nu, K, theta);
  ConstantKState s;
  s.z = zv.z;
  s.dz = zv.dz;
  s.denominator = lambda0 * std::exp(nu * theta) - zv.dz;
  if (s.denominator == 0.0) {
    s.at_blowup = true;
    s.Q = std::copysign(HUGE_VAL, zv.z);
    s.D = std::copysign(HUGE_VAL, -zv.dz);
    return s;
  }
  s.Q = zv.z / s.denominator;
  s.D = -zv.dz / s.denominator;
  return s;
}

std::optional<double> constant_K_blowup_time(double u0, double lambda0, double nu, double K,
                                             double horizon, double scan_step) {
  if (!(scan_step > 0.0)) throw ValidationError("scan_step must be positive", "scan_step");
  const auto den = [&](double t) { return constant_K_solution(u0, lambda0, nu, K, t).denominator; };
  double t0 = 0.0;
  double f0 = den(0.0);
  while (t0 < horizon) {
    const double t1 = std::min(horizon, t0 + scan_step);
    const double f1 = den(t1);
    if (f1 == 0.0) return t1;
    if ((f0 < 0.0) != (f1 < 0.0)) {
      double lo = t0;
      double hi = t1;
      while (hi - lo > 1e-13 * std::max(1.0, hi)) {
        const double mid = 0.5 * (lo + hi);
        const double fm = den(mid);
        if ((fm < 0.0) == (f0 < 0.0)) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      return 0.5 * (lo + hi);
    }
    t0 = t1;
    f0 = f1;
  }
  return std::nullopt;
}

PsiEnvelope psi_envelopes(const PhasePoint& p, double nu, double theta) {
  const double u0 = p.u0();
  const double l0 = p.lambda0();
  require_nondegenerate(nu, p.bound.Kplus);
  require_nondegenerate(nu, p.bound.Kminus);
  const ZValue zp = z_solution(u0, nu, p.bound.Kplus, theta);
  const ZValue zm = z_solution(u0, nu, p.bound.Kminus, theta);
  const double growth = l0 * std::exp(nu * theta);
  const double a_p = growth / zp.z;
  const double a_m = growth / zm.z;
  const double u_p = -zp.dz / zp.z;
  const double u_m = -zm.dz / zm.z;
  PsiEnvelope env;
  env.psi_lo = std::min(a_p, a_m) + std::min(u_p, u_m);
  env.psi_hi = std::max(a_p, a_m) + std::max(u_p, u_m);
  env.valid = zp.z > 0.0 && zm.z > 0.0;
  return env;
}

PsiEnvelope psi_plugin(const PhasePoint& p, double nu, double theta) {
  const double u0 = p.u0();
  const double l0 = p.lambda0();
  require_nondegenerate(nu, p.bound.Kplus);
  require_nondegenerate(nu, p.bound.Kminus);
  const auto inv_q = [&](double K) {
    const ZValue zv = z_solution(u0, nu, K, theta);
    return (l0 * std::exp(nu * theta) - zv.dz) / zv.z;
  };
  const double a = inv_q(p.bound.Kminus);
  const double b = inv_q(p.bound.Kplus);
  const ZValue zp = z_solution(u0, nu, p.bound.Kplus, theta);
  const ZValue zm = z_solution(u0, nu, p.bound.Kminus, theta);
  return {std::min(a, b), std::max(a, b), zp.z > 0.0 && zm.z > 0.0};
}

double literal_F(double alpha, double beta, double nu, double K, double theta, int sign) {
  const double w2 = K - 0.25 * nu * nu;
  if (!(w2 > 0.0)) throw NotApplicable("literal F is defined on the trigonometric branch only");
  const double w = std::sqrt(w2);
  const double coef = (nu * alpha + 2.0 * beta) / (sign > 0 ? 2.0 * w : w);
  return 1.0 - alpha +
         (coef * std::sin(w * theta) + alpha * std::cos(w * theta)) * std::exp(-0.5 * nu * theta);
}

}  // namespace coldplasma
