#pragma once

// Eulerian reconstruction of the fields from the moving particle grid by
// piecewise cubic Hermite interpolation (values P, E with slopes Q, D).

#include <vector>

#include "coldplasma/solver.hpp"

namespace coldplasma {

struct FieldSample {
  double rho = 0.0;
  double P = 0.0;
  double E = 0.0;
  double Q = 0.0;
  double D = 0.0;
  double N = 1.0;
};

struct SnapshotTable {
  double theta = 0.0;
  std::vector<FieldSample> rows;      // sorted by rho
  std::vector<double> skipped;        // queries outside the particle hull
  double min_h = 0.0;
  // Set when the narrowest cell is below 1e-3 of the initial spacing; values
  // near that cell are unreliable.
  bool degraded = false;
};

// Throws OutOfRange outside [rho_1, rho_M] and InvalidState if the particle
// positions are not strictly increasing.
FieldSample hermite_sample(const Ensemble& e, double rho_query);

// Queries must be sorted ascending (ValidationError otherwise).
SnapshotTable snapshot(const Ensemble& e, const std::vector<double>& queries);

// n equally spaced points on [lo, hi] inclusive.
std::vector<double> linspace(double lo, double hi, int n);

namespace detail {

// Skips the ordering check; caller guarantees a classical ensemble and a
// query inside the hull.
FieldSample hermite_sample_unchecked(const Ensemble& e, double rho_query);

}  // namespace detail

}  // namespace coldplasma
