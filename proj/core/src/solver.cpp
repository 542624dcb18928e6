#include "coldplasma/solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "coldplasma/errors.hpp"
#include "coldplasma/sampling.hpp"

#if defined(_OPENMP)
#define COLDPLASMA_PARALLEL_FOR _Pragma("omp parallel for schedule(static)")
#else
#define COLDPLASMA_PARALLEL_FOR
#endif

namespace coldplasma {

const char* to_string(RunVerdict v) noexcept {
  switch (v) {
    case RunVerdict::broke:
      return "broke";
    case RunVerdict::smooth_until_theta_max:
      return "smooth_until_theta_max";
  }
  return "unknown";
}

const char* to_string(BreakCause c) noexcept {
  switch (c) {
    case BreakCause::none:
      return "none";
    case BreakCause::crossing:
      return "trajectory_crossing";
    case BreakCause::q_threshold:
      return "q_threshold";
    case BreakCause::d_threshold:
      return "d_threshold";
    case BreakCause::nonfinite_stage:
      return "nonfinite_stage";
  }
  return "unknown";
}

void RunConfig::validate() const {
  validate_initial_data(initial_data);
  if (M < 3) throw ValidationError("M must be at least 3", "M");
  if (!(d > 0.0) || !std::isfinite(d)) throw ValidationError("d must be positive", "d");
  if (!(nu >= 0.0) || !std::isfinite(nu)) throw ValidationError("nu must be >= 0", "nu");
  scheme.validate();
  if (!(theta_max > 0.0) || !std::isfinite(theta_max)) {
    throw ValidationError("theta_max must be positive", "theta_max");
  }
  if (!(monitors.q_max > 0.0)) throw ValidationError("q_max must be positive", "q_max");
  if (!(monitors.d_min < 0.0)) throw ValidationError("d_min must be negative", "d_min");
  if (diagnostics_every < 1) {
    throw ValidationError("diagnostics_every must be at least 1", "diagnostics_every");
  }
  for (const auto& s : output.snapshots) {
    if (!(s.theta >= 0.0)) throw ValidationError("snapshot theta must be >= 0", "snapshot_theta");
    if (s.points < 1) throw ValidationError("snapshot points must be positive", "snapshot_points");
    if (!(s.rho_max > s.rho_min)) {
      throw ValidationError("snapshot range is empty", "snapshot_rho_max");
    }
  }
}

std::vector<double> initial_grid(const RunConfig& config) {
  std::vector<double> rho(static_cast<std::size_t>(config.M));
  const double h = config.h();
  const double half = 0.5 * config.M;
  // (k - M/2) h rather than k h - d keeps the grid exactly antisymmetric.
  for (int k = 1; k <= config.M; ++k) {
    rho[static_cast<std::size_t>(k - 1)] = (k - half) * h;
  }
  return rho;
}

Ensemble initialize(const RunConfig& config) {
  config.validate();
  Ensemble e;
  e.scheme = config.scheme;
  e.d = config.d;
  e.h0 = config.h();
  const std::vector<double> grid = initial_grid(config);
  e.particles.reserve(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const InitialValues v = evaluate(config.initial_data, grid[k]);
    if (!(1.0 - v.dE > 0.0)) {
      throw InvalidInitialData("initial density 1 - E0' is not positive at rho = " +
                                   std::to_string(grid[k]),
                               "initial_data");
    }
    ParticleState s;
    s.rhoL = grid[k] - v.E;
    s.P = v.P;
    s.R = v.E;
    s.Q = v.dP;
    s.D = v.dE;
    if (k > 0 && !(s.rhoL > e.particles.back().rhoL)) {
      throw InvalidInitialData("Lagrangian labels are not increasing at rho = " +
                                   std::to_string(grid[k]),
                               "initial_data");
    }
    e.particles.push_back(s);
  }
  return e;
}

AdvanceResult advance(Ensemble& e, double nu) {
  using State = std::array<double, 4>;
  const std::size_t n = e.size();
  std::vector<ParticleState> next(e.particles);
  std::vector<int> failed(n, 0);
  const StepScheme scheme = e.scheme;
  const auto rhs = [nu](const State& y) -> State {
    const StateDerivative d = detail::characteristic_rhs_unchecked(y[0], y[1], y[2], y[3], nu);
    return {d.dP, d.dR, d.dQ, d.dD};
  };
  const long count = static_cast<long>(n);
  COLDPLASMA_PARALLEL_FOR
  for (long i = 0; i < count; ++i) {
    const auto k = static_cast<std::size_t>(i);
    const ParticleState& s = e.particles[k];
    const StepResult<State> r = step(scheme, rhs, State{s.P, s.R, s.Q, s.D});
    failed[k] = r.failed_stage;
    next[k].P = r.state[0];
    next[k].R = r.state[1];
    next[k].Q = r.state[2];
    next[k].D = r.state[3];
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (failed[k] != 0) return {false, k, failed[k]};
  }
  e.particles.swap(next);
  ++e.steps;
  e.theta = static_cast<double>(e.steps) * e.scheme.tau;
  return {};
}

BreakingCheck detect_breaking(const Ensemble& e, const BreakingThresholds& thresholds) {
  BreakingCheck c;
  const std::size_t n = e.size();
  if (n == 0) return c;
  c.min_h = std::numeric_limits<double>::infinity();
  c.min_D = std::numeric_limits<double>::infinity();
  std::size_t q_index = 0;
  std::size_t d_index = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const ParticleState& s = e.particles[k];
    if (k + 1 < n) {
      const double h = e.position(k + 1) - e.position(k);
      if (h < c.min_h) {
        c.min_h = h;
        c.min_h_index = k;
      }
    }
    const double aq = std::abs(s.Q);
    if (aq > c.max_abs_Q) {
      c.max_abs_Q = aq;
      q_index = k;
    }
    if (s.D < c.min_D) {
      c.min_D = s.D;
      d_index = k;
    }
    if (!(s.Q * s.Q + 2.0 * s.D - 1.0 < 0.0)) c.critrel_holds = false;
  }
  if (c.min_h <= 0.0) {
    c.broke = true;
    c.cause = BreakCause::crossing;
    c.rho_break = 0.5 * (e.position(c.min_h_index) + e.position(c.min_h_index + 1));
  } else if (c.max_abs_Q > thresholds.q_max) {
    c.broke = true;
    c.cause = BreakCause::q_threshold;
    c.rho_break = e.position(q_index);
  } else if (c.min_D < thresholds.d_min) {
    c.broke = true;
    c.cause = BreakCause::d_threshold;
    c.rho_break = e.position(d_index);
  }
  return c;
}

SeriesRecord diagnostics(const Ensemble& e) {
  SeriesRecord r;
  r.theta = e.theta;
  r.min_h = std::numeric_limits<double>::infinity();
  r.N_max = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < e.size(); ++k) {
    const ParticleState& s = e.particles[k];
    r.N_max = std::max(r.N_max, 1.0 - s.D);
    r.E_max = std::max(r.E_max, std::abs(s.R));
    r.P_max = std::max(r.P_max, std::abs(s.P));
    r.max_Q = std::max(r.max_Q, std::abs(s.Q));
    if (k + 1 < e.size()) r.min_h = std::min(r.min_h, e.position(k + 1) - e.position(k));
  }
  if (e.size() >= 2 && e.position(0) <= 0.0 && e.position(e.size() - 1) >= 0.0) {
    r.N_origin = detail::hermite_sample_unchecked(e, 0.0).N;
  } else {
    r.N_origin = std::numeric_limits<double>::quiet_NaN();
  }
  return r;
}

namespace {

// Counts sign changes of the field at one particle.
class SignChangeCounter {
 public:
  void observe(double value) {
    if (value == 0.0) return;
    const int s = value > 0.0 ? 1 : -1;
    if (sign_ != 0 && s != sign_) ++changes_;
    sign_ = s;
  }
  int changes() const noexcept { return changes_; }

 private:
  int sign_ = 0;
  int changes_ = 0;
};

std::size_t probe_particle(const Ensemble& e) {
  std::size_t best = 0;
  double best_value = -1.0;
  for (std::size_t k = 0; k < e.size(); ++k) {
    const double a = std::abs(e.particles[k].R);
    if (a > best_value) {
      best_value = a;
      best = k;
    }
  }
  return best;
}

void warn_on_boundary_data(const RunConfig& config, const Ensemble& e, RunReport& report) {
  double peak = 0.0;
  for (const auto& s : e.particles) peak = std::max({peak, std::abs(s.R), std::abs(s.P)});
  if (peak == 0.0) return;
  const ParticleState& first = e.particles.front();
  const ParticleState& last = e.particles.back();
  const double edge = std::max({std::abs(first.R), std::abs(first.P), std::abs(last.R),
                                std::abs(last.P)});
  if (edge > 1e-8 * peak) {
    report.warnings.push_back("initial data are not negligible at the domain edge (|E0|,|P0| = " +
                              std::to_string(edge) + " at rho = +-" + std::to_string(config.d) +
                              ")");
  }
}

}  // namespace

RunReport run(const RunConfig& config, const StepObserver& observer) {
  Ensemble e = initialize(config);
  RunReport report;
  warn_on_boundary_data(config, e, report);

  const BreakingCheck initial = detect_breaking(e, config.monitors);
  report.critrel_initial = initial.critrel_holds;
  if (!initial.critrel_holds) {
    report.warnings.push_back("local smoothness condition Q^2 + 2D - 1 < 0 fails initially");
  }
  report.probe_index = probe_particle(e);
  report.probe_rho0 = e.position(report.probe_index);
  SignChangeCounter probe;
  probe.observe(e.particles[report.probe_index].R);

  report.series.push_back(diagnostics(e));
  if (observer) observer(e);

  const double tau = config.scheme.tau;
  const long total = static_cast<long>(std::ceil(config.theta_max / tau - 1e-9));
  bool recorded_last = true;
  for (long i = 0; i < total; ++i) {
    const AdvanceResult r = advance(e, config.nu);
    if (!r.ok) {
      report.verdict = RunVerdict::broke;
      report.cause = BreakCause::nonfinite_stage;
      report.theta_break = static_cast<double>(e.steps + 1) * tau;
      report.rho_break = e.position(r.failed_particle);
      break;
    }
    const BreakingCheck check = detect_breaking(e, config.monitors);
    probe.observe(e.particles[report.probe_index].R);
    if (check.broke) {
      report.verdict = RunVerdict::broke;
      report.cause = check.cause;
      report.theta_break = e.theta;
      report.rho_break = check.rho_break;
      report.series.push_back(diagnostics(e));
      recorded_last = true;
      break;
    }
    if (observer) observer(e);
    recorded_last = e.steps % config.diagnostics_every == 0;
    if (recorded_last) report.series.push_back(diagnostics(e));
  }
  if (!recorded_last) report.series.push_back(diagnostics(e));

  report.oscillation_count = probe.changes() / 2;
  report.steps = e.steps;
  report.theta_end = e.theta;
  return report;
}

ThresholdResult find_threshold_nu(const RunConfig& config, double nu_lo, double nu_hi,
                                  double tol) {
  if (!(nu_lo >= 0.0) || !std::isfinite(nu_hi) || !(nu_lo < nu_hi)) {
    throw InvalidBracket("need 0 <= nu_lo < nu_hi");
  }
  if (!(tol > 0.0)) throw ValidationError("tol must be positive", "tol");

  ThresholdResult result;
  const auto probe = [&](double nu) {
    RunConfig c = config;
    c.nu = nu;
    const RunReport r = run(c);
    result.trace.push_back({nu, r.verdict, r.theta_break});
    return r.verdict == RunVerdict::broke;
  };

  if (!probe(nu_lo)) throw InvalidBracket("nu_lo does not break within theta_max");
  if (probe(nu_hi)) throw InvalidBracket("nu_hi breaks within theta_max");

  double lo = nu_lo;
  double hi = nu_hi;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (probe(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  result.nu_lo = lo;
  result.nu_hi = hi;
  result.nu_star = 0.5 * (lo + hi);
  return result;
}

}  // namespace coldplasma
