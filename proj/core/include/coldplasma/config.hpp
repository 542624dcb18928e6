#pragma once

// Flat `key = value` run configuration and compiled-in scenario presets.
//
//   # comment
//   preset = "fig2_nu0"
//   nu = 0.0143
//   snapshot_theta = [29.0, 29.49]
//
// Keys are applied after the preset regardless of their order in the file.

#include <string>
#include <utility>
#include <vector>

#include "coldplasma/limiters.hpp"
#include "coldplasma/phase_plane.hpp"
#include "coldplasma/solver.hpp"

namespace coldplasma {

// Collisionless breaking time of the reference Gaussian run, used to express
// collision frequencies as nu * theta_wb.
inline constexpr double kReferenceBreakingTime = 29.5;

struct ThresholdSettings {
  double nu_lo = 0.01;
  double nu_hi = 0.02;
  double tol = 1e-5;
};

struct AnalysisSettings {
  int samples = 401;   // rho0 samples on [-d, d]
  VerdictOptions verdict;
  LimiterOptions limiter;
};

struct Settings {
  std::string preset;  // empty when none was applied
  RunConfig run;
  ThresholdSettings threshold;
  AnalysisSettings analysis;
  std::string table_path;  // tabulated initial data source, if any
  // Defaults that were filled in because the key was absent.
  std::vector<std::string> notices;
};

std::vector<std::string> preset_names();

// Throws ValidationError for an unknown name.
Settings preset(const std::string& name);

// Throws ParseError (with line and column) on malformed text and
// ValidationError naming the key for unknown keys or invalid values.
Settings parse_config_text(const std::string& text, const std::string& source = "<string>");

// Throws IoError if the file cannot be read.
Settings parse_config(const std::string& path);

// Applies one `key = value` assignment (used for command-line overrides).
void apply_setting(Settings& settings, const std::string& key, const std::string& value);

// Reads rho,E0,P0,dE0,dP0 columns from a CSV file ('#' comments allowed).
TabulatedProfile read_table(const std::string& path);

// Every effective parameter as key/value text, for reports.
std::vector<std::pair<std::string, std::string>> config_echo(const Settings& settings);

}  // namespace coldplasma
