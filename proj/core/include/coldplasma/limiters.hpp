#pragma once

// Comparison curves bounding the (D, Q) projection of a characteristic, and
// the guaranteed number of revolutions they certify.
//
// Sigma_ij uses K_i in the friction term and K_j in the field term, with
// index m meaning K- and p meaning K+ = 1:
//   Sigma_ij = -nu Q / ((1 - D) K_i) - D / ((1 - D) K_j) - Q^2 / (1 - D).
// The outer (upper) limiter follows the extreme of Sigma that pushes the
// curve away from the origin in each quadrant; in every quadrant that is
// K_i = K+, while K_j = K- in quadrants I and III and K+ in II and IV.

#include <optional>
#include <string>
#include <vector>

#include "coldplasma/phase_plane.hpp"
#include "coldplasma/solver.hpp"

namespace coldplasma {

enum class Quadrant { I = 1, II = 2, III = 3, IV = 4 };

// I: Q > 0, D < 0; II: Q > 0, D > 0; III: Q < 0, D > 0; IV: Q < 0, D < 0.
Quadrant quadrant_of(double D, double Q);
const char* to_string(Quadrant q) noexcept;

enum class KIndex { m, p };

struct SigmaLabel {
  KIndex friction = KIndex::p;
  KIndex field = KIndex::p;
};

std::string to_string(SigmaLabel s);

double sigma(SigmaLabel label, double D, double Q, double nu, double Kminus);

// Right side of (1/2) dQ^2/dD at the actual K.
double psi_qdp(double D, double Q, double K, double nu);

struct SigmaBounds {
  SigmaLabel lower;
  SigmaLabel upper;
  double lower_value = 0.0;
  double upper_value = 0.0;
};

// Pointwise bounds lower <= psi_qdp(D, Q, K, nu) <= upper valid for every
// K in [Kminus, 1] in the open quadrant containing (D, Q).
SigmaBounds sigma_bounds(double D, double Q, double nu, double Kminus);

// Label followed by the outer limiter in each quadrant.
SigmaLabel outer_limiter_label(Quadrant q);

enum class LimiterMethod { numeric, closed_form };

struct LimiterOptions {
  LimiterMethod method = LimiterMethod::numeric;
  double ds = 2e-3;             // RK4 step in the curve parameter
  double event_tol = 1e-10;     // axis-crossing tolerance in the parameter
  int max_revolutions = 50;     // beyond this the count is reported unbounded
  double escape = 1e6;          // |Q| or |D| beyond this counts as escape
  double segment_length_cap = 1e3;
  int record_every = 10;        // polyline decimation; 0 disables polylines
};

struct LimiterSegment {
  Quadrant quadrant = Quadrant::I;
  SigmaLabel label;
  std::vector<double> D;
  std::vector<double> Q;
  // nu = 0 invariant (K_j Q^2 + D^2) / (1 - D)^2 at the segment start.
  double C = 0.0;
};

struct AxisCrossing {
  Quadrant from = Quadrant::I;
  Quadrant to = Quadrant::I;
  double D = 0.0;
  double Q = 0.0;
};

enum class LimiterStop { escaped, half_line, revolution_cap, stalled, not_certified };

struct LimiterTrace {
  std::vector<LimiterSegment> segments;
  std::vector<AxisCrossing> crossings;
  int revolutions = 0;
  bool unbounded = false;  // the cap was reached without a stop
  double lifetime_bound = 0.0;
  LimiterStop stop = LimiterStop::escaped;
};

const char* to_string(LimiterStop s) noexcept;

// Traces the outer limiter from (alpha, beta). A revolution is credited at
// the start when the first-revolution smooth predicate holds there, and again
// each time the limiter leaves quadrant IV through the Q = 0 axis. The trace
// stops when the limiter escapes, when it crosses Q = 0 from quadrant II at
// D* >= 1/2, or at the revolution cap.
// Throws ValidationError at the origin or for nu outside [0, 2 sqrt(K-)).
LimiterTrace limiter_trace(const PhasePoint& p, double nu, const LimiterOptions& options = {});

struct RevolutionSample {
  double rho0 = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double Kminus = 1.0;
  int revolutions = 0;
  bool unbounded = false;
};

struct RevolutionBound {
  std::optional<int> n_min;  // empty when every sample is unbounded
  double lifetime_bound = 0.0;
  std::vector<double> worst_rho;
  std::vector<RevolutionSample> samples;
};

RevolutionBound guaranteed_revolutions(const RunConfig& config, const std::vector<double>& rho_samples,
                                       const LimiterOptions& options = {});

}  // namespace coldplasma
