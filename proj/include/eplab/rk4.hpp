#pragma once

#include <algorithm>
#include <cmath>
#include <optional>

namespace eplab {

/// One classical Runge-Kutta step. `rhs(t, y)` returns dy/dt; State is any
/// vector-space type (double, Eigen vectors, ...).
template <typename State, typename Rhs>
State rk4_step(const State& y, double t, double h, Rhs&& rhs) {
  const State k1 = rhs(t, y);
  const State k2 = rhs(t + 0.5 * h, State(y + (0.5 * h) * k1));
  const State k3 = rhs(t + 0.5 * h, State(y + (0.5 * h) * k2));
  const State k4 = rhs(t + h, State(y + h * k3));
  return State(y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
}

template <typename State>
struct EventLocation {
  double time;     ///< upper end of the final bracket
  double bracket;  ///< width of the final bracket
  State state;     ///< candidate state at `time` that fired the trigger
};

/// Smallest bracket the event search refines to.
inline double event_tolerance(double t) { return 1e-13 * std::max(1.0, std::abs(t)); }

/// Fixed-step RK4 from (t, y) to t_end. Before a step is accepted the candidate
/// is passed to `fired(candidate)`; when it fires, the step is halved and retried
/// from the last accepted state, and accepted half-steps advance the lower end of
/// the bracket (bisection on the trigger with the integration carried along).
/// `observe(t, y)` is called after every accepted step. On return `t`, `y` hold
/// the last accepted state.
template <typename State, typename Rhs, typename Fired, typename Observe>
std::optional<EventLocation<State>> march(State& y, double& t, double t_end, double dt, Rhs&& rhs,
                                          Fired&& fired, Observe&& observe) {
  const double t0 = t;
  long regular_steps = 0;
  double h = dt;
  bool halving = false;
  while (t < t_end) {
    double t_next = halving ? t + h : t0 + static_cast<double>(regular_steps + 1) * dt;
    if (t_next > t_end || t_end - t_next < 1e-12 * dt) t_next = t_end;
    const double step = t_next - t;
    State candidate = rk4_step(y, t, step, rhs);
    if (fired(candidate)) {
      if (step <= event_tolerance(t)) return EventLocation<State>{t_next, step, std::move(candidate)};
      h = 0.5 * step;
      halving = true;
      continue;
    }
    y = std::move(candidate);
    t = t_next;
    if (!halving) ++regular_steps;
    observe(t, y);
  }
  return std::nullopt;
}

}  // namespace eplab
