#pragma once

#include <string>
#include <string_view>

#include "eplab/lagrangian.hpp"
#include "eplab/model.hpp"

namespace eplab {

struct RunConfig {
  ModelParams model;
  ProfileSpec density;
  int density_nodes = 1001;
  ProfileSpec velocity{ProfileFamily::zero, 1.0, 1.0, 0.5, 0.0, {}};
  int velocity_nodes = 1001;
  int shell_count = 200;
  double dt = 1e-4;
  double t_end = 1.0;
  Thresholds thresholds;
  std::string trace_path = "trace.csv";
  std::string report_path = "report.txt";
};

/// Parses an INI-style document:
///
///   [model]     dim, delta, K, gamma, alpha
///   [density]   family, amplitude, radius, sigma, slope, table, nodes
///   [velocity]  same keys as [density]
///   [numerics]  shell_count, dt, t_end, escape_threshold, min_radius_fraction
///   [output]    trace, report
///
/// `table` is a comma-separated list of r:value pairs. Comments start with # or ;.
/// Required: model.dim, model.delta, density.family, numerics.shell_count,
/// numerics.dt, numerics.t_end. Every problem is reported as ConfigError.
RunConfig parse_config(std::string_view text);

RunConfig load_config(const std::string& path);

}  // namespace eplab
