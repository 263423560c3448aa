#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "eplab/fluid_state.hpp"
#include "eplab/model.hpp"

namespace eplab {

/// Places `shell_count` equal-mass shells at the radii enclosing (j + 1/2)/n of
/// the total mass and samples the velocity profile there.
FluidState init_shells(const RadialProfile& density, const RadialProfile& velocity,
                       int shell_count, int dim);

/// dr_j/dt = u_j,  du_j/dt = delta alpha(N) S_j / r_j^(N-1) - K gamma rho^(gamma-2) d(rho)/dr
/// with S_j = (mass below shell j + m_j / 2) / omega_N.
Vector shell_acceleration(const FluidState& state, const ModelParams& params);

/// One RK4 step. Throws CrossedShells if the shells lose their ordering.
FluidState step(const FluidState& state, const ModelParams& params, double dt);

enum class BlowupCause { none, shell_crossing, divergence_escape, radius_collapse };

std::string_view blowup_cause_name(BlowupCause cause);

struct Thresholds {
  double divergence_escape = 1e9;
  double min_radius_fraction = 1e-6;
};

/// Per-step diagnostics of a simulation run.
struct DivergenceTrace {
  int dim = 0;
  std::vector<double> times;
  std::vector<double> h_integrated;
  std::vector<double> h_pointwise_center;
  std::vector<double> tan_bound;       ///< nan where undefined or not applicable
  std::vector<double> rational_bound;  ///< nan where undefined or not applicable
  std::vector<double> support_volume;
  std::vector<double> frozen_volume;
  std::vector<double> mass;
  std::vector<double> cs_lhs;
  std::vector<double> cs_rhs;
  std::vector<double> min_density;
  std::vector<double> max_density;
  std::vector<double> center_density;  ///< density of the innermost shell

  std::size_t size() const { return times.size(); }
};

struct SimReport {
  bool blowup_detected = false;
  std::optional<double> blowup_time;
  BlowupCause cause = BlowupCause::none;
  double time_resolution = 0.0;  ///< width of the final detection bracket
  std::optional<double> predicted_T_integration;
  std::optional<double> predicted_T_pointwise;
  double max_cs_violation = 0.0;
  double max_riccati_residual = 0.0;
  std::optional<double> max_integration_excess;
  bool outlived_integration_bound = false;
};

struct SimResult {
  DivergenceTrace trace;
  SimReport report;
  FluidState final_state;
};

SimResult run_simulation(const FluidState& initial, const ModelParams& params, double dt,
                         double t_end, const Thresholds& thresholds = {});

struct Detection {
  BlowupCause cause = BlowupCause::none;
  std::optional<double> time;
  std::optional<double> bracket_start;  ///< last clean time before `time`
};

/// Post-hoc scan of a finished trace and the states recorded alongside it
/// (`probes`, any subset of the run in time order, may be empty). Returns the
/// earliest threshold crossing.
Detection detect_blowup(const DivergenceTrace& trace, std::span<const FluidState> probes,
                        const Thresholds& thresholds);

struct BoundResiduals {
  /// max (H_integrated - tan_bound) / (1 + |tan_bound|) where the bound is
  /// defined; only for the attractive pressureless case.
  std::optional<double> integration_excess;
  /// the trace reached the tan bound's blowup time without blowing up first
  bool outlived_integration_bound = false;
  /// signed max and max magnitude of
  /// (D(div u)/Dt + (div u)^2/N - delta alpha rho) / (1 + (div u)^2/N + alpha rho)
  /// along the center characteristic, over interior samples with t <= 0.95 t_last
  double pointwise_residual_max = 0.0;
  double pointwise_residual_abs = 0.0;
  /// max (cs_lhs - cs_rhs) / max(1, cs_rhs)
  double cs_violation = 0.0;
};

BoundResiduals verify_bounds(const DivergenceTrace& trace, const ModelParams& params, double mass);

struct EmdenTrajectory {
  std::vector<double> times;
  std::vector<double> radius;
  std::vector<double> radius_rate;
  std::optional<double> collapse_time;
};

/// R'' = delta M / R^(N-1), R(0) = R0, R'(0) = Rdot0, integrated with RK4 until
/// R drops below collapse_fraction * R0 or t_end is reached.
EmdenTrajectory emden_boundary(double R0, double Rdot0, double mass, const ModelParams& params,
                               double dt, double t_end, double collapse_fraction = 1e-6);

}  // namespace eplab
