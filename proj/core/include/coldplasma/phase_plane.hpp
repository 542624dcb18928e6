#pragma once

// First-revolution predicates on the (D, Q) derivative plane and the
// frozen-K closed-form solution they are built from.

#include <optional>
#include <string>

#include "coldplasma/dynamics.hpp"

namespace coldplasma {

// (alpha, beta) = (D0, Q0) at the foot of one characteristic.
struct PhasePoint {
  double alpha = 0.0;
  double beta = 0.0;
  EnergyBound bound;

  // Throw NotApplicable when beta == 0.
  double u0() const;
  double lambda0() const;
};

PhasePoint make_phase_point(double alpha, double beta, double P0, double E0);

// beta^2 + 2 alpha - 1 < 0
bool cond0(double alpha, double beta);

enum class TMinusMode {
  literal,        // prefactor 1 / (K- - nu^2/4)
  reciprocal_root // prefactor 1 / sqrt(K- - nu^2/4)
};

enum class BlowupCondition {
  // Literal form; it certifies some frozen-K- trajectories that never blow up.
  // beta^2 + e^{nu T}/K- (2 alpha - 1) + (1/(K- - nu^2/4) - e^{nu T}/K-) alpha^2 > 0
  quadratic,
  // beta < 0, alpha < 1 and w^2 beta^2 + (alpha + nu beta/2)^2 > e^{nu T} (1 - alpha)^2
  // with w^2 = K- - nu^2/4; sound for the frozen-K- system.
  rigorous
};

struct VerdictOptions {
  TMinusMode tminus = TMinusMode::literal;
  BlowupCondition blowup = BlowupCondition::rigorous;
};

enum class VerdictKind { guaranteed_smooth_one_revolution, guaranteed_blowup_first_revolution, undecided };

struct Verdict {
  VerdictKind kind = VerdictKind::undecided;
  std::string certificate;  // the inequality instance that fired
  double margin = 0.0;      // value of its left side (or of the tested expression)
};

const char* to_string(VerdictKind k) noexcept;
const char* to_string(TMinusMode m) noexcept;
const char* to_string(BlowupCondition c) noexcept;

// Requires beta != 0 and 0 <= nu < 2 sqrt(K-).
double T_minus(const PhasePoint& p, double nu, TMinusMode mode = TMinusMode::literal);

// Throws NotApplicable when nu is outside [0, 2), or when the smooth branch
// does not fire and nu >= 2 sqrt(K-).
Verdict first_revolution_verdict(const PhasePoint& p, double nu, const VerdictOptions& options = {});

struct ConstantKState {
  double Q = 0.0;
  double D = 0.0;
  double z = 1.0;
  double dz = 0.0;
  // lambda0 e^{nu theta} - z'; Q and D blow up where this vanishes.
  double denominator = 0.0;
  bool at_blowup = false;
};

// z'' - nu z' + K z = 0, z(0) = 1, z'(0) = -u0; Q = z / den, D = -z' / den.
ConstantKState constant_K_solution(double u0, double lambda0, double nu, double K, double theta);

// First root of the denominator on (0, horizon], located by scanning with
// `scan_step` and bisecting to 1e-13.
std::optional<double> constant_K_blowup_time(double u0, double lambda0, double nu, double K,
                                             double horizon, double scan_step = 1e-3);

struct PsiEnvelope {
  double psi_lo = 0.0;
  double psi_hi = 0.0;
  // Both frozen-K comparison solutions z(K-), z(K+) are still positive; the
  // bounds are only asserted while this holds.
  bool valid = true;
};

// Two-sided bounds on 1/Q for K(theta) in [K-, K+], assembled from the
// frozen-K solutions at the two extremes. Throws DomainError when nu equals
// 2 sqrt(K+) or 2 sqrt(K-) (degenerate frequency).
PsiEnvelope psi_envelopes(const PhasePoint& p, double nu, double theta);

// 1/Q of the frozen-K solution at K- and K+ (the plug-in form of the
// envelope). Not a bound in general; kept for comparison.
PsiEnvelope psi_plugin(const PhasePoint& p, double nu, double theta);

// Literal F+ (sign = +1) or F- (sign = -1) denominators, trigonometric
// branch only. F+ carries a factor 1/2 on the sine coefficient that F- lacks.
double literal_F(double alpha, double beta, double nu, double K, double theta, int sign);

}  // namespace coldplasma
