#include "eplab/fluid_state.hpp"

#include <cmath>

#include "eplab/errors.hpp"

namespace eplab {

double volume_midpoint(double a, double b, int dim) {
  if (dim == 1) return 0.5 * (a + b);
  return std::pow(0.5 * (std::pow(a, dim) + std::pow(b, dim)), 1.0 / dim);
}

double ball_volume(double r, int dim) { return unit_sphere_area(dim) * std::pow(r, dim) / dim; }

bool FluidState::ordered() const {
  const Index n = size();
  if (n == 0) return false;
  if (!shell_radius.allFinite() || !shell_velocity.allFinite()) return false;
  if (!(shell_radius[0] > 0.0)) return false;
  for (Index j = 1; j < n; ++j)
    if (!(shell_radius[j] > shell_radius[j - 1])) return false;
  return true;
}

void FluidState::require_ordered() const {
  if (!ordered()) throw CrossedShells(time, time);
}

Vector FluidState::support_edges() const {
  const Index n = size();
  Vector edges(n + 1);
  edges[0] = 0.0;
  for (Index j = 0; j + 1 < n; ++j)
    edges[j + 1] = volume_midpoint(shell_radius[j], shell_radius[j + 1], dim);
  edges[n] = shell_radius[n - 1];
  return edges;
}

Vector FluidState::mass_edges() const {
  Vector edges = support_edges();
  const Index n = size();
  if (n >= 2) {
    // r_out^N = r_{n-1}^N + (r_{n-1}^N - r_{n-2}^N) / 2
    const double last = std::pow(shell_radius[n - 1], dim);
    const double prev = std::pow(shell_radius[n - 2], dim);
    edges[n] = std::pow(last + 0.5 * (last - prev), 1.0 / dim);
  }
  return edges;
}

Vector FluidState::density() const {
  const Vector edges = mass_edges();
  const Index n = size();
  Vector rho(n);
  for (Index j = 0; j < n; ++j)
    rho[j] = shell_mass[j] / (ball_volume(edges[j + 1], dim) - ball_volume(edges[j], dim));
  return rho;
}

}  // namespace eplab
