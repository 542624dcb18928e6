// coldplasma: batch front end for the cold-plasma breaking toolkit.
//
// Exit status: 0 on success (a run that breaks is a success), 1 on invalid
// input or usage, 2 on runtime failure.

#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "coldplasma/config.hpp"
#include "coldplasma/errors.hpp"
#include "coldplasma/hill.hpp"
#include "coldplasma/limiters.hpp"
#include "coldplasma/output.hpp"
#include "coldplasma/phase_plane.hpp"
#include "coldplasma/sampling.hpp"
#include "coldplasma/solver.hpp"
#include "coldplasma/units.hpp"
#include "coldplasma/version.hpp"

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace cp = coldplasma;
namespace fs = std::filesystem;

namespace {

struct CommonOptions {
  std::string preset;
  std::string config;
  std::vector<std::string> sets;
  std::string output_dir;
  int jobs = 0;
  bool quiet = false;
};

void add_common(CLI::App* app, CommonOptions& o) {
  app->add_option("--preset", o.preset, "Scenario preset")->check(CLI::IsMember(cp::preset_names()));
  app->add_option("--config", o.config, "Config file (key = value lines)");
  app->add_option("--set", o.sets, "Override one key, as key=value (repeatable)");
  app->add_option("--output-dir", o.output_dir, "Output directory (overrides COLDPLASMA_OUTPUT_DIR)");
  app->add_option("--jobs", o.jobs, "Worker threads (0 = runtime default)")->check(CLI::NonNegativeNumber);
  app->add_flag("--quiet", o.quiet, "Only print errors");
}

cp::Settings load_settings(const CommonOptions& o, const std::string& default_preset) {
  cp::Settings s;
  if (!o.config.empty()) {
    s = cp::parse_config(o.config);
    if (!o.preset.empty()) {
      throw cp::ValidationError("use either --preset or a preset key in --config, not both", "preset");
    }
  } else {
    s = cp::preset(o.preset.empty() ? default_preset : o.preset);
  }
  for (const auto& kv : o.sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw cp::ValidationError("--set expects key=value, got '" + kv + "'", "set");
    cp::apply_setting(s, kv.substr(0, eq), kv.substr(eq + 1));
  }
  s.run.output.directory =
      o.output_dir.empty() ? cp::output_directory(s.run.output.directory) : o.output_dir;
  s.run.validate();
#if defined(_OPENMP)
  if (o.jobs > 0) omp_set_num_threads(o.jobs);
#endif
  return s;
}

cp::RunMetadata metadata(const cp::Settings& s, const std::string& command) {
  cp::RunMetadata m;
  m.command = command;
  m.config = cp::config_echo(s);
  m.notices = s.notices;
  return m;
}

void say(const CommonOptions& o, const std::string& line) {
  if (!o.quiet) std::cout << line << '\n';
}

void print_written(const CommonOptions& o, const std::vector<std::string>& files) {
  for (const auto& f : files) say(o, "wrote " + f);
}

std::string verdict_line(const cp::RunReport& r) {
  if (r.verdict == cp::RunVerdict::broke) {
    return fmt::format("verdict broke theta_break={:.6g} rho_break={:.6g} cause={} oscillations={}",
                       *r.theta_break, r.rho_break.value_or(NAN), cp::to_string(r.cause), r.oscillation_count);
  }
  return fmt::format("verdict smooth_until_theta_max theta_end={:.6g} oscillations={}", r.theta_end,
                     r.oscillation_count);
}

// Runs the configured simulation, capturing snapshots at the steps nearest
// to the requested times.
cp::RunReport run_with_snapshots(const cp::RunConfig& config, std::vector<cp::SnapshotTable>& snapshots) {
  const double tau = config.scheme.tau;
  std::vector<bool> taken(config.output.snapshots.size(), false);
  std::vector<std::optional<cp::SnapshotTable>> captured(config.output.snapshots.size());
  const auto observer = [&](const cp::Ensemble& e) {
    for (std::size_t i = 0; i < config.output.snapshots.size(); ++i) {
      const auto& req = config.output.snapshots[i];
      if (taken[i] || std::abs(e.theta - req.theta) > 0.5 * tau + 1e-12) continue;
      taken[i] = true;
      captured[i] = cp::snapshot(e, cp::linspace(req.rho_min, req.rho_max, req.points));
    }
  };
  cp::RunReport report = cp::run(config, observer);
  for (std::size_t i = 0; i < captured.size(); ++i) {
    if (captured[i]) {
      snapshots.push_back(std::move(*captured[i]));
    } else {
      report.warnings.push_back(fmt::format("snapshot at theta = {} not reached (run ended at {})",
                                            config.output.snapshots[i].theta, report.theta_end));
    }
  }
  return report;
}

int cmd_simulate(const CommonOptions& o) {
  const cp::Settings s = load_settings(o, "fig2_nu0");
  std::vector<cp::SnapshotTable> snaps;
  const cp::RunReport report = run_with_snapshots(s.run, snaps);
  for (const auto& w : report.warnings) std::cerr << "warning: " << w << '\n';
  print_written(o, cp::emit_outputs(report, snaps, s.run.output, metadata(s, "simulate")));
  say(o, verdict_line(report));
  return 0;
}

int cmd_snapshot(const CommonOptions& o, double theta, std::optional<double> rho_min,
                 std::optional<double> rho_max, int points) {
  cp::Settings s = load_settings(o, "fig5_snapshot");
  if (!(theta >= 0.0)) throw cp::ValidationError("--theta must be >= 0", "theta");
  s.run.theta_max = std::max(theta, s.run.scheme.tau);
  const double lo = rho_min.value_or(s.run.output.snapshots.empty() ? -s.run.d : s.run.output.snapshots[0].rho_min);
  const double hi = rho_max.value_or(s.run.output.snapshots.empty() ? s.run.d : s.run.output.snapshots[0].rho_max);
  s.run.output.snapshots = {{theta, lo, hi, points}};
  s.run.validate();
  std::vector<cp::SnapshotTable> snaps;
  const cp::RunReport report = run_with_snapshots(s.run, snaps);
  for (const auto& w : report.warnings) std::cerr << "warning: " << w << '\n';
  for (const auto& t : snaps) {
    if (t.degraded) std::cerr << "warning: snapshot cell collapse (min h = " << t.min_h << "), values near it are unreliable\n";
  }
  print_written(o, cp::emit_outputs(report, snaps, s.run.output, metadata(s, "snapshot")));
  say(o, verdict_line(report));
  return 0;
}

std::string verdict_text(const cp::PhasePoint& p, double nu, const cp::VerdictOptions& vo) {
  try {
    return cp::to_string(cp::first_revolution_verdict(p, nu, vo).kind);
  } catch (const cp::NotApplicable&) {
    return "not_applicable";
  }
}

int cmd_analyze(const CommonOptions& o) {
  const cp::Settings s = load_settings(o, "revolution_bound");
  const auto rho = cp::linspace(-s.run.d, s.run.d, s.analysis.samples);
  cp::LimiterOptions lo = s.analysis.limiter;
  const cp::RevolutionBound bound = cp::guaranteed_revolutions(s.run, rho, lo);

  cp::CsvTable t;
  t.comments = {fmt::format("coldplasma {} analyze", cp::kVersion)};
  for (const auto& [k, v] : cp::config_echo(s)) t.comments.push_back(k + " = " + v);
  t.comments.push_back(std::string("tminus_mode = ") + cp::to_string(s.analysis.verdict.tminus));
  t.comments.push_back(std::string("blowup_condition = ") + cp::to_string(s.analysis.verdict.blowup));
  t.header = {"rho0", "alpha", "beta", "Kminus", "verdict", "revolutions", "unbounded"};
  for (const auto& smp : bound.samples) {
    const cp::InitialValues v = cp::evaluate(s.run.initial_data, smp.rho0);
    const cp::PhasePoint p = cp::make_phase_point(smp.alpha, smp.beta, v.P, v.E);
    t.rows.push_back({cp::format_number(smp.rho0), cp::format_number(smp.alpha), cp::format_number(smp.beta),
                      cp::format_number(smp.Kminus), verdict_text(p, s.run.nu, s.analysis.verdict),
                      std::to_string(smp.revolutions), smp.unbounded ? "true" : "false"});
  }
  const fs::path dir(s.run.output.directory);
  const std::string stem = s.run.output.prefix;
  print_written(o, cp::write_files({{(dir / (stem + "_analysis.csv")).string(), cp::render_csv(t)}}));
  if (!bound.n_min) {
    say(o, "n_min unbounded (no sample terminates within the revolution cap)");
    return 0;
  }
  double worst_lo = INFINITY;
  double worst_hi = 0.0;
  for (double r : bound.worst_rho) {
    worst_lo = std::min(worst_lo, std::abs(r));
    worst_hi = std::max(worst_hi, std::abs(r));
  }
  say(o, fmt::format("n_min={} lifetime_bound={:.6g} worst_abs_rho0=[{:.6g}, {:.6g}] worst_samples={}", *bound.n_min,
                     bound.lifetime_bound, worst_lo, worst_hi, bound.worst_rho.size()));
  return 0;
}

int cmd_limiters(const CommonOptions& o, const std::vector<double>& rho0s) {
  const cp::Settings s = load_settings(o, "revolution_bound");
  cp::LimiterOptions lo = s.analysis.limiter;
  cp::CsvTable curves;
  curves.comments = {fmt::format("coldplasma {} limiters", cp::kVersion),
                     "nu = " + cp::format_number(s.run.nu)};
  curves.header = {"rho0", "segment", "quadrant", "label", "D", "Q"};
  cp::CsvTable summary;
  summary.comments = curves.comments;
  summary.header = {"rho0", "alpha", "beta", "Kminus", "revolutions", "lifetime_bound", "stop", "unbounded"};
  for (double r : rho0s) {
    const cp::InitialValues v = cp::evaluate(s.run.initial_data, r);
    const cp::PhasePoint p = cp::make_phase_point(v.dE, v.dP, v.P, v.E);
    const cp::LimiterTrace tr = cp::limiter_trace(p, s.run.nu, lo);
    for (std::size_t k = 0; k < tr.segments.size(); ++k) {
      const auto& seg = tr.segments[k];
      for (std::size_t i = 0; i < seg.D.size(); ++i) {
        curves.rows.push_back({cp::format_number(r), std::to_string(k), cp::to_string(seg.quadrant),
                               cp::to_string(seg.label), cp::format_number(seg.D[i]), cp::format_number(seg.Q[i])});
      }
    }
    summary.rows.push_back({cp::format_number(r), cp::format_number(p.alpha), cp::format_number(p.beta),
                            cp::format_number(p.bound.Kminus), std::to_string(tr.revolutions),
                            cp::format_number(tr.lifetime_bound), cp::to_string(tr.stop),
                            tr.unbounded ? "true" : "false"});
    say(o, fmt::format("rho0={:.6g} revolutions={} lifetime_bound={:.6g} stop={}", r, tr.revolutions,
                       tr.lifetime_bound, cp::to_string(tr.stop)));
  }
  const fs::path dir(s.run.output.directory);
  const std::string stem = s.run.output.prefix;
  print_written(o, cp::write_files({{(dir / (stem + "_limiters.csv")).string(), cp::render_csv(curves)},
                                    {(dir / (stem + "_limiters_summary.csv")).string(), cp::render_csv(summary)}}));
  return 0;
}

int cmd_threshold(const CommonOptions& o) {
  const cp::Settings s = load_settings(o, "threshold_search");
  const cp::ThresholdResult r = cp::find_threshold_nu(s.run, s.threshold.nu_lo, s.threshold.nu_hi, s.threshold.tol);
  cp::CsvTable t;
  t.comments = {fmt::format("coldplasma {} threshold", cp::kVersion)};
  for (const auto& [k, v] : cp::config_echo(s)) t.comments.push_back(k + " = " + v);
  t.comments.push_back("nu_star = " + cp::format_number(r.nu_star));
  t.comments.push_back("nu_star_times_theta_wb = " + cp::format_number(r.nu_star * cp::kReferenceBreakingTime));
  t.header = {"nu", "verdict", "theta_break"};
  for (const auto& p : r.trace) {
    t.rows.push_back({cp::format_number(p.nu), cp::to_string(p.verdict),
                      p.theta_break ? cp::format_number(*p.theta_break) : std::string("")});
  }
  const fs::path dir(s.run.output.directory);
  print_written(o, cp::write_files({{(dir / (s.run.output.prefix + "_threshold.csv")).string(), cp::render_csv(t)}}));
  say(o, fmt::format("nu_star={:.8g} nu_star*theta_wb={:.6g} bracket=[{:.8g}, {:.8g}] runs={}", r.nu_star,
                     r.nu_star * cp::kReferenceBreakingTime, r.nu_lo, r.nu_hi, r.trace.size()));
  return 0;
}

int cmd_units(const CommonOptions& o, cp::PlasmaParams params, bool ln_given) {
  if (!ln_given) params.lnLambda = cp::coulomb_logarithm(params.N0e, params.Te);
  const double e = cp::eta(params);
  const double nu = cp::collision_frequency(params);
  const cp::DimensionlessScales sc = cp::dimensionless_scales(params.n0);
  say(o, fmt::format("eta={:.6g}", e));
  say(o, fmt::format("lnLambda={:.6g}{}", params.lnLambda, ln_given ? "" : " (estimated)"));
  say(o, fmt::format("nu={:.6g}", nu));
  say(o, fmt::format("nu_times_theta_wb={:.6g}", nu * cp::kReferenceBreakingTime));
  say(o, fmt::format("omega_p={:.6g} s^-1", sc.omega_p));
  say(o, fmt::format("k_p={:.6g} cm^-1", sc.k_p));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Relativistic cold-plasma oscillations with collisions: breaking simulation and analysis"};
  app.set_version_flag("--version", std::string(cp::kVersion));
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  CommonOptions common;

  auto* simulate = app.add_subcommand("simulate", "Run the particle solver and write series and summary");
  add_common(simulate, common);

  double snap_theta = 29.49;
  std::optional<double> snap_lo;
  std::optional<double> snap_hi;
  int snap_points = 2001;
  auto* snapshot = app.add_subcommand("snapshot", "Run to a time and sample the Eulerian fields");
  add_common(snapshot, common);
  snapshot->add_option("--theta", snap_theta, "Sampling time");
  snapshot->add_option("--rho-min", snap_lo, "Left end of the sample grid");
  snapshot->add_option("--rho-max", snap_hi, "Right end of the sample grid");
  snapshot->add_option("--points", snap_points, "Number of sample points")->check(CLI::PositiveNumber);

  auto* analyze = app.add_subcommand("analyze", "First-revolution verdicts and guaranteed revolutions over rho0");
  add_common(analyze, common);

  std::vector<double> rho0s{1.0};
  auto* limiters = app.add_subcommand("limiters", "Write limiter polylines for given starting points");
  add_common(limiters, common);
  limiters->add_option("--rho0", rho0s, "Starting Lagrangian positions");

  auto* threshold = app.add_subcommand("threshold", "Bisect the collision frequency separating breaking runs");
  add_common(threshold, common);

  cp::PlasmaParams params;
  double lnl = 0.0;
  auto* units = app.add_subcommand("units", "Collision frequency and plasma scales from physical parameters");
  units->add_option("--Z", params.Z, "Ion charge number")->check(CLI::PositiveNumber);
  units->add_option("--N0e", params.N0e, "Electron density [cm^-3]");
  units->add_option("--Te", params.Te, "Electron temperature [eV]");
  auto* ln_opt = units->add_option("--lnLambda", lnl, "Coulomb logarithm (estimated when omitted)");
  units->add_option("--n0", params.n0, "Density for omega_p and k_p [cm^-3]");
  units->add_flag("--quiet", common.quiet, "Only print errors");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*simulate) return cmd_simulate(common);
    if (*snapshot) return cmd_snapshot(common, snap_theta, snap_lo, snap_hi, snap_points);
    if (*analyze) return cmd_analyze(common);
    if (*limiters) return cmd_limiters(common, rho0s);
    if (*threshold) return cmd_threshold(common);
    if (*units) {
      if (*ln_opt) params.lnLambda = lnl;
      return cmd_units(common, params, static_cast<bool>(*ln_opt));
    }
  } catch (const cp::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const cp::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const cp::InvalidBracket& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const cp::NotApplicable& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "runtime failure: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
