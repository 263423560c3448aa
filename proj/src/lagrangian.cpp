#include "eplab/lagrangian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "eplab/errors.hpp"
#include "eplab/functionals.hpp"
#include "eplab/greens.hpp"
#include "eplab/riccati.hpp"
#include "eplab/rk4.hpp"

namespace eplab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Radius x in [a, b] with omega * int_a^x rho s^(N-1) ds = target.
double invert_cell_mass(double a, double b, double rho_a, double slope, int dim, double omega,
                        double target) {
  double lo = a;
  double hi = b;
  for (int it = 0; it < 200 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (omega * detail::linear_moment(a, mid, rho_a, slope, dim - 1) < target)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::string_view blowup_cause_name(BlowupCause cause) {
  switch (cause) {
    case BlowupCause::none: return "none";
    case BlowupCause::shell_crossing: return "shell-crossing";
    case BlowupCause::divergence_escape: return "divergence-escape";
    case BlowupCause::radius_collapse: return "radius-collapse";
  }
  return "none";
}

FluidState init_shells(const RadialProfile& density, const RadialProfile& velocity,
                       int shell_count, int dim) {
  if (dim < 1) throw InvalidDimension(dim);
  if (shell_count < 8) throw DomainError("init_shells: shell_count must be >= 8");
  density.require_density();
  const Vector& s = density.nodes();
  const Vector& rho = density.values();
  const Index m = s.size();
  for (Index i = 0; i + 1 < m; ++i) {
    if (!(rho[i] > 0.0))
      throw DomainError("init_shells: density vanishes inside its support (vacuum region)");
  }

  const double omega = unit_sphere_area(dim);
  // cumulative mass at every node
  Vector cumulative(m);
  cumulative[0] = 0.0;
  for (Index i = 0; i + 1 < m; ++i) {
    const double slope = (rho[i + 1] - rho[i]) / (s[i + 1] - s[i]);
    cumulative[i + 1] =
        cumulative[i] + omega * detail::linear_moment(s[i], s[i + 1], rho[i], slope, dim - 1);
  }
  const double total = cumulative[m - 1];
  const double shell_mass = total / shell_count;

  FluidState state;
  state.time = 0.0;
  state.dim = dim;
  state.shell_mass = Vector::Constant(shell_count, shell_mass);
  state.shell_radius.resize(shell_count);
  state.shell_velocity.resize(shell_count);

  Index cell = 0;
  for (int j = 0; j < shell_count; ++j) {
    const double target = (j + 0.5) * shell_mass;
    while (cell + 2 < m && cumulative[cell + 1] <= target) ++cell;
    const double slope = (rho[cell + 1] - rho[cell]) / (s[cell + 1] - s[cell]);
    const double r = invert_cell_mass(s[cell], s[cell + 1], rho[cell], slope, dim, omega,
                                      target - cumulative[cell]);
    state.shell_radius[j] = r;
    state.shell_velocity[j] = velocity(r);
  }
  state.require_ordered();
  return state;
}

Vector shell_acceleration(const FluidState& state, const ModelParams& params) {
  const Index n = state.size();
  const Vector& r = state.shell_radius;
  Vector acc = Vector::Zero(n);

  if (params.delta != 0) {
    const double factor = params.delta * params.coupling / unit_sphere_area(params.dim);
    double below = 0.0;
    for (Index j = 0; j < n; ++j) {
      const double enclosed = below + 0.5 * state.shell_mass[j];
      acc[j] = factor * enclosed / std::pow(r[j], params.dim - 1);
      below += state.shell_mass[j];
    }
  }

  if (params.pressure_const > 0.0) {
    const double K = params.pressure_const;
    const double gamma = params.adiabatic_exp;
    const Vector rho = state.density();
    const Vector drho = first_derivative(r, rho);
    acc.array() -= K * gamma * rho.array().pow(gamma - 2.0) * drho.array();
  }
  return acc;
}

namespace {

// Phase-space vector [r; u] <-> FluidState.
Vector pack(const FluidState& s) {
  Vector y(2 * s.size());
  y << s.shell_radius, s.shell_velocity;
  return y;
}

FluidState unpack(const FluidState& like, const Vector& y, double t) {
  const Index n = like.size();
  FluidState s;
  s.time = t;
  s.dim = like.dim;
  s.shell_mass = like.shell_mass;
  s.shell_radius = y.head(n);
  s.shell_velocity = y.tail(n);
  return s;
}

auto make_rhs(const FluidState& like, const ModelParams& params) {
  return [&like, &params](double t, const Vector& y) {
    const Index n = like.size();
    const FluidState s = unpack(like, y, t);
    Vector dy(2 * n);
    dy << s.shell_velocity, shell_acceleration(s, params);
    return dy;
  };
}

struct Sample {
  double h_integrated;
  double h_pointwise;
  CsPair cs;
  double min_density;
  double max_density;
  double center_density;
};

Sample measure(const FluidState& s) {
  const Vector div = divergence_field(s);
  const Vector rho = s.density();
  Sample out;
  out.h_integrated = divergence_integral(s);
  out.h_pointwise = div[0];
  out.cs = cauchy_schwarz_gap(s);
  out.min_density = rho.minCoeff();
  out.max_density = rho.maxCoeff();
  out.center_density = rho[0];
  return out;
}

enum class Verdict { clean, nonfinite, crossing, escape, collapse };

Verdict classify(const FluidState& s, const Thresholds& th, double initial_outer) {
  if (!s.shell_radius.allFinite() || !s.shell_velocity.allFinite()) return Verdict::nonfinite;
  if (!s.ordered()) return Verdict::crossing;
  const Vector div = divergence_field(s);
  if (!div.allFinite()) return Verdict::nonfinite;
  const double H = divergence_integral(s);
  if (H < -th.divergence_escape || div[0] < -th.divergence_escape) return Verdict::escape;
  if (s.outer_radius() < th.min_radius_fraction * initial_outer) return Verdict::collapse;
  return Verdict::clean;
}

BlowupCause to_cause(Verdict v) {
  switch (v) {
    case Verdict::crossing: return BlowupCause::shell_crossing;
    case Verdict::escape: return BlowupCause::divergence_escape;
    case Verdict::collapse: return BlowupCause::radius_collapse;
    default: return BlowupCause::none;
  }
}

}  // namespace

FluidState step(const FluidState& state, const ModelParams& params, double dt) {
  if (!(dt > 0.0)) throw DomainError("step: dt must be positive");
  state.require_ordered();
  const Vector y = rk4_step(pack(state), state.time, dt, make_rhs(state, params));
  FluidState next = unpack(state, y, state.time + dt);
  if (!next.ordered()) throw CrossedShells(state.time, next.time);
  return next;
}

SimResult run_simulation(const FluidState& initial, const ModelParams& params, double dt,
                         double t_end, const Thresholds& thresholds) {
  params.validate();
  if (!(dt > 0.0)) throw DomainError("run_simulation: dt must be positive");
  if (!(t_end > 0.0)) throw DomainError("run_simulation: t_end must be positive");
  if (!(thresholds.divergence_escape > 0.0) || !(thresholds.min_radius_fraction > 0.0))
    throw DomainError("run_simulation: thresholds must be positive");
  if (initial.size() < 3) throw InsufficientData("run_simulation needs at least 3 shells");
  if (initial.dim != params.dim) throw DomainError("run_simulation: state and model dimensions differ");
  initial.require_ordered();

  const double frozen = support_volume(initial);
  const double initial_outer = initial.outer_radius();
  const double mass = initial.mass();
  const Sample first = measure(initial);

  SimResult result;
  SimReport& report = result.report;
  DivergenceTrace& trace = result.trace;

  std::optional<IntegrationBound> tan_case;
  if (params.delta == -1 && params.pressureless()) {
    tan_case = IntegrationBound{first.h_integrated, frozen, params.coupling * mass};
    report.predicted_T_integration = integration_blowup_time(*tan_case);
  }
  std::optional<PointwiseBound> rational_case;
  if (params.delta <= 0 && params.pressureless()) {
    rational_case = PointwiseBound{first.h_pointwise, params.dim};
    report.predicted_T_pointwise = pointwise_blowup_time(*rational_case);
  }

  const auto record = [&](double t, const FluidState& s) {
    const Sample smp = measure(s);
    const double elapsed = t - initial.time;
    trace.times.push_back(t);
    trace.h_integrated.push_back(smp.h_integrated);
    trace.h_pointwise_center.push_back(smp.h_pointwise);
    double tb = kNaN;
    if (tan_case && elapsed < *report.predicted_T_integration - 1e-12)
      tb = tan_bound(tan_case->h0, tan_case->volume, tan_case->forcing, elapsed);
    trace.tan_bound.push_back(tb);
    double rb = kNaN;
    if (rational_case &&
        (!report.predicted_T_pointwise || elapsed < *report.predicted_T_pointwise - 1e-12))
      rb = rational_bound(rational_case->h0, rational_case->dim, elapsed);
    trace.rational_bound.push_back(rb);
    trace.support_volume.push_back(support_volume(s));
    trace.frozen_volume.push_back(frozen);
    trace.mass.push_back(s.mass());
    trace.cs_lhs.push_back(smp.cs.lhs);
    trace.cs_rhs.push_back(smp.cs.rhs);
    trace.min_density.push_back(smp.min_density);
    trace.max_density.push_back(smp.max_density);
    trace.center_density.push_back(smp.center_density);
  };

  trace.dim = params.dim;
  record(initial.time, initial);

  Vector y = pack(initial);
  double t = initial.time;
  const double t_stop = initial.time + t_end;
  const auto rhs = make_rhs(initial, params);
  const auto fired = [&](const Vector& candidate) {
    return classify(unpack(initial, candidate, 0.0), thresholds, initial_outer) != Verdict::clean;
  };
  const auto observe = [&](double tk, const Vector& yk) { record(tk, unpack(initial, yk, tk)); };

  const auto event = march(y, t, t_stop, dt, rhs, fired, observe);
  result.final_state = unpack(initial, y, t);

  if (event) {
    const Verdict v = classify(unpack(initial, event->state, event->time), thresholds, initial_outer);
    if (v == Verdict::nonfinite) throw NumericFailure("nonfinite shell state", event->time);
    report.blowup_detected = true;
    report.blowup_time = event->time;
    report.cause = to_cause(v);
    report.time_resolution = event->bracket;
  }

  if (trace.size() >= 3) {
    const BoundResiduals res = verify_bounds(trace, params, mass);
    report.max_cs_violation = res.cs_violation;
    report.max_riccati_residual = res.pointwise_residual_max;
    report.max_integration_excess = res.integration_excess;
    report.outlived_integration_bound = res.outlived_integration_bound;
  } else if (!trace.cs_lhs.empty()) {
    report.max_cs_violation =
        (trace.cs_lhs[0] - trace.cs_rhs[0]) / std::max(1.0, trace.cs_rhs[0]);
  }
  return result;
}

Detection detect_blowup(const DivergenceTrace& trace, std::span<const FluidState> probes,
                        const Thresholds& thresholds) {
  if (trace.size() == 0) throw InsufficientData("detect_blowup: empty trace");

  Detection best;
  const auto offer = [&](BlowupCause cause, double time, std::optional<double> start) {
    if (!best.time || time < *best.time) {
      best.cause = cause;
      best.time = time;
      best.bracket_start = start;
    }
  };

  for (std::size_t i = 0; i < probes.size(); ++i) {
    if (!probes[i].ordered()) {
      offer(BlowupCause::shell_crossing, probes[i].time,
            i > 0 ? std::optional<double>(probes[i - 1].time) : std::nullopt);
      break;
    }
  }

  for (std::size_t k = 0; k < trace.size(); ++k) {
    if (trace.h_integrated[k] < -thresholds.divergence_escape ||
        trace.h_pointwise_center[k] < -thresholds.divergence_escape) {
      offer(BlowupCause::divergence_escape, trace.times[k],
            k > 0 ? std::optional<double>(trace.times[k - 1]) : std::nullopt);
      break;
    }
  }

  // R / R0 = (V / V0)^(1/N)
  const double v0 = trace.support_volume[0];
  if (trace.dim > 0 && v0 > 0.0) {
    for (std::size_t k = 0; k < trace.size(); ++k) {
      const double ratio = std::pow(trace.support_volume[k] / v0, 1.0 / trace.dim);
      if (ratio < thresholds.min_radius_fraction) {
        offer(BlowupCause::radius_collapse, trace.times[k],
              k > 0 ? std::optional<double>(trace.times[k - 1]) : std::nullopt);
        break;
      }
    }
  }
  return best;
}

BoundResiduals verify_bounds(const DivergenceTrace& trace, const ModelParams& params, double mass) {
  const std::size_t K = trace.size();
  if (K < 3) throw InsufficientData("verify_bounds needs at least 3 trace samples");
  if (!(mass > 0.0)) throw DomainError("verify_bounds: mass must be positive");

  BoundResiduals out;

  if (params.delta == -1 && params.pressureless()) {
    const IntegrationBound bound{trace.h_integrated[0], trace.frozen_volume[0],
                                 params.coupling * mass};
    const double T = integration_blowup_time(bound);
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < K; ++k) {
      const double t = trace.times[k] - trace.times[0];
      if (t >= T - 1e-12) {
        out.outlived_integration_bound = true;
        break;
      }
      const double b = tan_bound(bound.h0, bound.volume, bound.forcing, t);
      worst = std::max(worst, (trace.h_integrated[k] - b) / (1.0 + std::abs(b)));
    }
    out.integration_excess = worst;
  }

  const double t_cut = trace.times[0] + 0.95 * (trace.times[K - 1] - trace.times[0]);
  const double n = params.dim;
  for (std::size_t k = 1; k + 1 < K; ++k) {
    if (trace.times[k] > t_cut) break;
    const double h1 = trace.times[k] - trace.times[k - 1];
    const double h2 = trace.times[k + 1] - trace.times[k];
    const double* H = trace.h_pointwise_center.data();
    const double dHdt = (-h2 / (h1 * (h1 + h2))) * H[k - 1] + ((h2 - h1) / (h1 * h2)) * H[k] +
                        (h1 / (h2 * (h1 + h2))) * H[k + 1];
    const double rho = trace.center_density[k];
    const double quad = H[k] * H[k] / n;
    const double residual = dHdt + quad - params.delta * params.coupling * rho;
    const double scaled = residual / (1.0 + quad + params.coupling * rho);
    if (k == 1) {
      out.pointwise_residual_max = scaled;
    } else {
      out.pointwise_residual_max = std::max(out.pointwise_residual_max, scaled);
    }
    out.pointwise_residual_abs = std::max(out.pointwise_residual_abs, std::abs(scaled));
  }

  double cs = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < K; ++k)
    cs = std::max(cs, (trace.cs_lhs[k] - trace.cs_rhs[k]) / std::max(1.0, trace.cs_rhs[k]));
  out.cs_violation = cs;
  return out;
}

EmdenTrajectory emden_boundary(double R0, double Rdot0, double mass, const ModelParams& params,
                               double dt, double t_end, double collapse_fraction) {
  params.validate();
  if (!(R0 > 0.0)) throw DomainError("emden_boundary: R0 must be positive");
  if (!(mass > 0.0)) throw DomainError("emden_boundary: mass must be positive");
  if (!(dt > 0.0) || !(t_end > 0.0)) throw DomainError("emden_boundary: dt and t_end must be positive");
  if (!(collapse_fraction > 0.0)) throw DomainError("emden_boundary: collapse fraction must be positive");

  const double strength = params.delta * mass;
  const int power = params.dim - 1;
  const auto rhs = [strength, power](double, const Eigen::Vector2d& y) {
    return Eigen::Vector2d(y[1], strength / std::pow(y[0], power));
  };
  const double collapse_radius = collapse_fraction * R0;

  EmdenTrajectory traj;
  traj.times.push_back(0.0);
  traj.radius.push_back(R0);
  traj.radius_rate.push_back(Rdot0);

  Eigen::Vector2d y(R0, Rdot0);
  double t = 0.0;
  const auto fired = [&](const Eigen::Vector2d& c) {
    return !c.allFinite() || c[0] < collapse_radius;
  };
  const auto observe = [&](double tk, const Eigen::Vector2d& yk) {
    traj.times.push_back(tk);
    traj.radius.push_back(yk[0]);
    traj.radius_rate.push_back(yk[1]);
  };
  const auto event = march(y, t, t_end, dt, rhs, fired, observe);
  if (event) {
    if (!(event->state[0] < collapse_radius))
      throw NumericFailure("Emden integration produced a nonfinite state", event->time);
    traj.collapse_time = event->time;
  }
  return traj;
}

}  // namespace eplab
