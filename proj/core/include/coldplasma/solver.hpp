#pragma once

// Lagrangian particle solver: one characteristic per particle, advanced in
// lockstep so that trajectory crossings (breaking) can be seen between
// neighbours.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "coldplasma/dynamics.hpp"
#include "coldplasma/initial_data.hpp"
#include "coldplasma/integrate.hpp"

namespace coldplasma {

struct BreakingThresholds {
  double q_max = 1e6;   // |Q| above this counts as blow-up
  double d_min = -1e6;  // D below this counts as blow-up
};

struct SnapshotRequest {
  double theta = 0.0;
  double rho_min = -20.25;
  double rho_max = 20.25;
  int points = 801;
};

struct OutputPlan {
  std::string directory = ".";
  std::string prefix = "run";
  bool write_series = true;
  std::vector<SnapshotRequest> snapshots;
};

struct RunConfig {
  InitialData initial_data = GaussianProfile{};
  int M = 4050;
  double d = 20.25;
  double nu = 0.0;
  StepScheme scheme{SchemeKind::rk4, 0.01};
  double theta_max = 300.0;
  BreakingThresholds monitors;
  int diagnostics_every = 10;
  OutputPlan output;

  double h() const noexcept { return 2.0 * d / M; }

  // Throws ValidationError naming the first offending field.
  void validate() const;
};

struct Ensemble {
  std::vector<ParticleState> particles;
  double theta = 0.0;
  long steps = 0;
  StepScheme scheme;
  double d = 0.0;
  double h0 = 0.0;  // initial grid spacing

  std::size_t size() const noexcept { return particles.size(); }
  double position(std::size_t k) const noexcept { return particles[k].position(); }
};

enum class BreakCause { none, crossing, q_threshold, d_threshold, nonfinite_stage };

struct BreakingCheck {
  bool broke = false;
  BreakCause cause = BreakCause::none;
  double min_h = 0.0;
  std::size_t min_h_index = 0;  // left particle of the narrowest cell
  double max_abs_Q = 0.0;
  double min_D = 0.0;
  // Q^2 + 2D - 1 < 0 at every particle (local smoothness indicator).
  bool critrel_holds = true;
  std::optional<double> rho_break;
};

struct AdvanceResult {
  bool ok = true;
  std::size_t failed_particle = 0;
  int failed_stage = 0;
};

struct SeriesRecord {
  double theta = 0.0;
  double N_max = 0.0;
  double N_origin = 0.0;
  double E_max = 0.0;
  double P_max = 0.0;
  double min_h = 0.0;
  double max_Q = 0.0;
};

enum class RunVerdict { broke, smooth_until_theta_max };

struct RunReport {
  RunVerdict verdict = RunVerdict::smooth_until_theta_max;
  std::optional<double> theta_break;
  std::optional<double> rho_break;
  BreakCause cause = BreakCause::none;
  std::vector<SeriesRecord> series;
  int oscillation_count = 0;
  std::size_t probe_index = 0;
  double probe_rho0 = 0.0;
  bool critrel_initial = true;
  long steps = 0;
  double theta_end = 0.0;
  std::vector<std::string> warnings;
};

const char* to_string(RunVerdict v) noexcept;
const char* to_string(BreakCause c) noexcept;

// Initial Eulerian grid rho_k = k h - d, k = 1..M.
std::vector<double> initial_grid(const RunConfig& config);

// Throws InvalidInitialData when 1 - D0 <= 0 at some node or the Lagrangian
// labels are not strictly increasing.
Ensemble initialize(const RunConfig& config);

// One synchronized step of every particle. On failure the ensemble is left
// unchanged and the offending particle is reported.
AdvanceResult advance(Ensemble& e, double nu);

BreakingCheck detect_breaking(const Ensemble& e, const BreakingThresholds& thresholds);

SeriesRecord diagnostics(const Ensemble& e);

// Called with the ensemble at theta = 0 and after every accepted step.
using StepObserver = std::function<void(const Ensemble&)>;

RunReport run(const RunConfig& config, const StepObserver& observer = {});

struct ThresholdProbe {
  double nu = 0.0;
  RunVerdict verdict = RunVerdict::smooth_until_theta_max;
  std::optional<double> theta_break;
};

struct ThresholdResult {
  double nu_star = 0.0;
  double nu_lo = 0.0;  // last value that broke
  double nu_hi = 0.0;  // last value that stayed smooth
  std::vector<ThresholdProbe> trace;
};

// Bisects nu on [nu_lo, nu_hi] until the bracket is narrower than tol.
// Throws InvalidBracket unless nu_lo breaks and nu_hi stays smooth.
ThresholdResult find_threshold_nu(const RunConfig& config, double nu_lo, double nu_hi,
                                  double tol);

}  // namespace coldplasma
