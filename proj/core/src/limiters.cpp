#include "coldplasma/limiters.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>
#include <numbers>

#include <fmt/format.h>

#include "coldplasma/errors.hpp"
#include "coldplasma/initial_data.hpp"
#include "coldplasma/integrate.hpp"

#if defined(_OPENMP)
#define COLDPLASMA_PARALLEL_FOR _Pragma("omp parallel for schedule(dynamic)")
#else
#define COLDPLASMA_PARALLEL_FOR
#endif

namespace coldplasma {

Quadrant quadrant_of(double D, double Q) {
  if (Q > 0.0) return D < 0.0 ? Quadrant::I : Quadrant::II;
  return D > 0.0 ? Quadrant::III : Quadrant::IV;
}

const char* to_string(Quadrant q) noexcept {
  switch (q) {
    case Quadrant::I:
      return "I";
    case Quadrant::II:
      return "II";
    case Quadrant::III:
      return "III";
    case Quadrant::IV:
      return "IV";
  }
  return "?";
}

std::string to_string(SigmaLabel s) {
  std::string out = "Sigma_";
  out += s.friction == KIndex::m ? 'm' : 'p';
  out += s.field == KIndex::m ? 'm' : 'p';
  return out;
}

const char* to_string(LimiterStop s) noexcept {
  switch (s) {
    case LimiterStop::escaped:
      return "escaped";
    case LimiterStop::half_line:
      return "half_line";
    case LimiterStop::revolution_cap:
      return "revolution_cap";
    case LimiterStop::stalled:
      return "stalled";
    case LimiterStop::not_certified:
      return "not_certified";
  }
  return "unknown";
}

namespace {

double k_value(KIndex i, double Kminus) { return i == KIndex::m ? Kminus : 1.0; }

}  // namespace

double sigma(SigmaLabel label, double D, double Q, double nu, double Kminus) {
  const double Kf = k_value(label.friction, Kminus);
  const double Kd = k_value(label.field, Kminus);
  return (-nu * Q / Kf - D / Kd - Q * Q) / (1.0 - D);
}

double psi_qdp(double D, double Q, double K, double nu) {
  return (-nu * Q / K - D / K - Q * Q) / (1.0 - D);
}

SigmaBounds sigma_bounds(double D, double Q, double nu, double Kminus) {
  // Each 1/K term is monotone in K; pick the end of [K-, 1] that minimises
  // or maximises it given the signs of Q and D.
  const KIndex friction_max = Q > 0.0 ? KIndex::p : KIndex::m;  // -nu Q / K
  const KIndex field_max = D > 0.0 ? KIndex::p : KIndex::m;     // -D / K
  const auto other = [](KIndex k) { return k == KIndex::m ? KIndex::p : KIndex::m; };
  SigmaBounds b;
  b.upper = {friction_max, field_max};
  b.lower = {other(friction_max), other(field_max)};
  b.upper_value = sigma(b.upper, D, Q, nu, Kminus);
  b.lower_value = sigma(b.lower, D, Q, nu, Kminus);
  return b;
}

SigmaLabel outer_limiter_label(Quadrant q) {
  switch (q) {
    case Quadrant::I:
    case Quadrant::III:
      return {KIndex::p, KIndex::m};
    case Quadrant::II:
    case Quadrant::IV:
      return {KIndex::p, KIndex::p};
  }
  return {};
}

namespace {

using Vec2 = std::array<double, 2>;

Quadrant start_quadrant(double D, double Q) {
  if (Q == 0.0) return D > 0.0 ? Quadrant::III : Quadrant::I;
  if (D == 0.0) return Q > 0.0 ? Quadrant::II : Quadrant::IV;
  return quadrant_of(D, Q);
}

// Quadrant reached when leaving q across the axis of the given coordinate.
Quadrant across(Quadrant q, bool q_axis) {
  switch (q) {
    case Quadrant::I:
      return q_axis ? Quadrant::IV : Quadrant::II;
    case Quadrant::II:
      return q_axis ? Quadrant::III : Quadrant::I;
    case Quadrant::III:
      return q_axis ? Quadrant::II : Quadrant::IV;
    case Quadrant::IV:
      return q_axis ? Quadrant::I : Quadrant::III;
  }
  return q;
}

// Signs required inside q: +1 / -1 for D and Q.
int d_sign(Quadrant q) { return (q == Quadrant::II || q == Quadrant::III) ? 1 : -1; }
int q_sign(Quadrant q) { return (q == Quadrant::I || q == Quadrant::II) ? 1 : -1; }

bool q_violated(Quadrant q, const Vec2& y) { return q_sign(q) * y[1] < 0.0; }
bool d_violated(Quadrant q, const Vec2& y) { return d_sign(q) * y[0] < 0.0; }
bool outside(Quadrant q, const Vec2& y) { return q_violated(q, y) || d_violated(q, y); }

double invariant(double D, double Q, double Kd) { return (Kd * Q * Q + D * D) / ((1.0 - D) * (1.0 - D)); }

void credit_start(const PhasePoint& p, LimiterTrace& t, bool& stop_now) {
  const Quadrant q0 = start_quadrant(p.alpha, p.beta);
  const bool certified = cond0(p.alpha, p.beta) && (p.beta < 0.0 || (p.beta == 0.0 && p.alpha > 0.0));
  stop_now = false;
  if (certified) {
    t.revolutions = 1;
  } else if (q0 == Quadrant::III || q0 == Quadrant::IV) {
    t.stop = LimiterStop::not_certified;
    stop_now = true;
  }
}

// Returns true when the trace must stop after this crossing.
bool handle_crossing(LimiterTrace& t, Quadrant from, Quadrant to, double D, double Q, int cap) {
  t.crossings.push_back({from, to, D, Q});
  if (from == Quadrant::II && to == Quadrant::III && D >= 0.5) {
    t.stop = LimiterStop::half_line;
    return true;
  }
  if (from == Quadrant::IV && to == Quadrant::I) {
    ++t.revolutions;
    if (t.revolutions >= cap) {
      t.stop = LimiterStop::revolution_cap;
      t.unbounded = true;
      return true;
    }
  }
  return false;
}

LimiterTrace trace_numeric(const PhasePoint& p, double nu, const LimiterOptions& o) {
  LimiterTrace t;
  bool stop_now = false;
  credit_start(p, t, stop_now);
  if (stop_now) return t;
  const double Km = p.bound.Kminus;
  const StepScheme scheme{SchemeKind::rk4, o.ds};

  Vec2 y{p.alpha, p.beta};
  Quadrant q = start_quadrant(p.alpha, p.beta);
  while (true) {
    const SigmaLabel label = outer_limiter_label(q);
    const double Kf = k_value(label.friction, Km);
    const double Kd = k_value(label.field, Km);
    const auto rhs = [nu, Kf, Kd](const Vec2& v) -> Vec2 {
      return {(1.0 - v[0]) * v[1], -nu * v[1] / Kf - v[0] / Kd - v[1] * v[1]};
    };
    LimiterSegment seg;
    seg.quadrant = q;
    seg.label = label;
    seg.C = invariant(y[0], y[1], Kd);
    const bool record = o.record_every > 0;
    if (record) {
      seg.D.push_back(y[0]);
      seg.Q.push_back(y[1]);
    }
    double s = 0.0;
    long steps = 0;
    bool escaped = false;
    while (true) {
      StepResult<Vec2> r = step(scheme, rhs, y);
      if (!r.ok() || std::abs(r.state[1]) > o.escape || std::abs(r.state[0]) > o.escape ||
          !(r.state[0] < 1.0)) {
        escaped = true;
        break;
      }
      if (outside(q, r.state)) {
        // bisect on the sub-step length
        double lo = 0.0;
        double hi = o.ds;
        Vec2 y_hi = r.state;
        while (hi - lo > o.event_tol) {
          const double mid = 0.5 * (lo + hi);
          const Vec2 ym = step(StepScheme{SchemeKind::rk4, mid}, rhs, y).state;
          if (outside(q, ym)) {
            hi = mid;
            y_hi = ym;
          } else {
            lo = mid;
          }
        }
        const bool via_q = q_violated(q, y_hi);
        if (via_q) {
          y_hi[1] = 0.0;
        } else {
          y_hi[0] = 0.0;
        }
        y = y_hi;
        if (record) {
          seg.D.push_back(y[0]);
          seg.Q.push_back(y[1]);
        }
        const Quadrant next = across(q, via_q);
        t.segments.push_back(std::move(seg));
        if (handle_crossing(t, q, next, y[0], y[1], o.max_revolutions)) return t;
        q = next;
        break;
      }
      y = r.state;
      s += o.ds;
      ++steps;
      if (record && steps % o.record_every == 0) {
        seg.D.push_back(y[0]);
        seg.Q.push_back(y[1]);
      }
      if (s > o.segment_length_cap) {
        t.segments.push_back(std::move(seg));
        t.stop = LimiterStop::stalled;
        t.unbounded = true;
        return t;
      }
    }
    if (escaped) {
      if (record) {
        seg.D.push_back(y[0]);
        seg.Q.push_back(y[1]);
      }
      t.segments.push_back(std::move(seg));
      t.stop = LimiterStop::escaped;
      return t;
    }
  }
}

// Points on the nu = 0 curve (K Q^2 + D^2) = g^2 (1 - D)^2 between D0 and D1.
void sample_closed_form(LimiterSegment& seg, double g, double Kd, double D0, double D1, int qsign,
                        int points) {
  for (int i = 0; i <= points; ++i) {
    const double D = D0 + (D1 - D0) * i / points;
    const double q2 = std::max(0.0, (g * g * (1.0 - D) * (1.0 - D) - D * D) / Kd);
    seg.D.push_back(D);
    seg.Q.push_back(qsign * std::sqrt(q2));
  }
}

LimiterTrace trace_closed_form(const PhasePoint& p, const LimiterOptions& o) {
  LimiterTrace t;
  bool stop_now = false;
  credit_start(p, t, stop_now);
  if (stop_now) return t;
  const double Km = p.bound.Kminus;
  const int points = o.record_every > 0 ? 64 : -1;

  Quadrant q = start_quadrant(p.alpha, p.beta);
  double D = p.alpha;
  double Q = p.beta;
  double Kd = k_value(outer_limiter_label(q).field, Km);
  double g = std::sqrt(invariant(D, Q, Kd));
  while (true) {
    const SigmaLabel label = outer_limiter_label(q);
    Kd = k_value(label.field, Km);
    LimiterSegment seg;
    seg.quadrant = q;
    seg.label = label;
    seg.C = g * g;
    const int qs = q_sign(q);
    double D_end = 0.0;
    double Q_end = 0.0;
    bool escape = false;
    switch (q) {
      case Quadrant::I:
      case Quadrant::III:
        // to the D = 0 axis
        D_end = 0.0;
        Q_end = qs * g / std::sqrt(Kd);
        break;
      case Quadrant::II:
        D_end = g / (1.0 + g);
        break;
      case Quadrant::IV:
        if (g >= 1.0) {
          escape = true;
          D_end = -o.escape;
        } else {
          D_end = -g / (1.0 - g);
        }
        break;
    }
    if (points > 0) {
      const double D_from = D;
      const double D_to = escape ? std::min(D_from, -10.0) : D_end;
      sample_closed_form(seg, g, Kd, D_from, D_to, qs, points);
    }
    t.segments.push_back(std::move(seg));
    if (escape) {
      t.stop = LimiterStop::escaped;
      return t;
    }
    const bool via_q = q == Quadrant::II || q == Quadrant::IV;
    const Quadrant next = across(q, via_q);
    D = D_end;
    Q = Q_end;
    if (handle_crossing(t, q, next, D, Q, o.max_revolutions)) return t;
    if (!via_q) {
      const double K_next = k_value(outer_limiter_label(next).field, Km);
      g *= std::sqrt(K_next / Kd);
    }
    q = next;
  }
}

}  // namespace

LimiterTrace limiter_trace(const PhasePoint& p, double nu, const LimiterOptions& options) {
  if (p.alpha == 0.0 && p.beta == 0.0) {
    throw ValidationError("limiter trace cannot start at the origin", "rho0");
  }
  if (!(p.alpha < 1.0)) throw ValidationError("limiter start needs D < 1", "alpha");
  const double Km = p.bound.Kminus;
  if (!(nu >= 0.0) || !(nu < 2.0 * std::sqrt(Km))) {
    throw ValidationError("limiter trace requires 0 <= nu < 2 sqrt(K-)", "nu");
  }
  if (options.max_revolutions < 1) {
    throw ValidationError("max_revolutions must be positive", "max_revolutions");
  }
  LimiterTrace t;
  if (options.method == LimiterMethod::closed_form) {
    if (nu != 0.0) throw NotApplicable("closed-form limiters exist only for nu = 0");
    t = trace_closed_form(p, options);
  } else {
    if (!(options.ds > 0.0)) throw ValidationError("ds must be positive", "ds");
    t = trace_numeric(p, nu, options);
  }
  t.lifetime_bound = 2.0 * std::numbers::pi * t.revolutions;
  return t;
}

RevolutionBound guaranteed_revolutions(const RunConfig& config, const std::vector<double>& rho_samples,
                                       const LimiterOptions& options) {
  validate_initial_data(config.initial_data);
  LimiterOptions o = options;
  o.record_every = 0;
  std::vector<RevolutionSample> samples(rho_samples.size());
  const long count = static_cast<long>(rho_samples.size());
  // exceptions must not cross the parallel region; keep the lowest index's
  std::vector<std::exception_ptr> errors(rho_samples.size());
  COLDPLASMA_PARALLEL_FOR
  for (long i = 0; i < count; ++i) {
    const auto k = static_cast<std::size_t>(i);
    try {
      RevolutionSample& s = samples[k];
      s.rho0 = rho_samples[k];
      const InitialValues v = evaluate(config.initial_data, s.rho0);
      s.alpha = v.dE;
      s.beta = v.dP;
      const PhasePoint p = make_phase_point(v.dE, v.dP, v.P, v.E);
      s.Kminus = p.bound.Kminus;
      if (p.alpha == 0.0 && p.beta == 0.0) {
        s.unbounded = true;
        continue;
      }
      const LimiterTrace t = limiter_trace(p, config.nu, o);
      s.revolutions = t.revolutions;
      s.unbounded = t.unbounded;
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  RevolutionBound out;
  for (const auto& s : samples) {
    if (s.unbounded) continue;
    if (!out.n_min || s.revolutions < *out.n_min) out.n_min = s.revolutions;
  }
  if (out.n_min) {
    out.lifetime_bound = 2.0 * std::numbers::pi * *out.n_min;
    for (const auto& s : samples) {
      if (!s.unbounded && s.revolutions == *out.n_min) out.worst_rho.push_back(s.rho0);
    }
  }
  out.samples = std::move(samples);
  return out;
}

}  // namespace coldplasma
