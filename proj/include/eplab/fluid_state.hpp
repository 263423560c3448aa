#pragma once

#include "eplab/model.hpp"

namespace eplab {

/// Radius splitting the N-volume between radii a and b in half:
/// ((a^N + b^N) / 2)^(1/N).
double volume_midpoint(double a, double b, int dim);

/// Volume of the ball of radius r in the symmetric-domain convention,
/// omega_N r^N / N (the line case gives the interval length 2r).
double ball_volume(double r, int dim);

/// Lagrangian shell ensemble. Shell j carries the fixed mass m_j and sits at
/// radius r_j(t) with velocity u_j(t).
struct FluidState {
  double time = 0.0;
  int dim = 3;
  Vector shell_mass;
  Vector shell_radius;
  Vector shell_velocity;

  Index size() const { return shell_radius.size(); }
  double outer_radius() const { return shell_radius[size() - 1]; }
  double mass() const { return shell_mass.sum(); }

  /// 0 < r_0 < r_1 < ... and every entry finite.
  bool ordered() const;

  /// Throws CrossedShells (bracketed at `time`) unless ordered().
  void require_ordered() const;

  /// n+1 cell edges: 0, volume midpoints between neighbours, and an outer edge
  /// placed half a cell (in volume) past the last shell. Shell j owns the mass
  /// between edges j and j+1.
  Vector mass_edges() const;

  /// Same as mass_edges() except the outer edge is the last shell radius, so the
  /// cells tile the support [0, R_outer] exactly.
  Vector support_edges() const;

  /// m_j / (volume of the cell between mass edges).
  Vector density() const;
};

}  // namespace eplab
