#pragma once

#include <cmath>

#include "eplab/errors.hpp"
#include "eplab/model.hpp"

namespace eplab {

/// Free-space Green's function of the Poisson equation:
/// |x| (N = 1), log|x| (N = 2), -1/|x|^(N-2) (N >= 3).
template <typename Scalar>
Scalar greens_function(Scalar radius, int dim) {
  using std::log;
  using std::pow;
  if (dim < 1) throw InvalidDimension(dim);
  if (radius < Scalar(0)) throw DomainError("greens_function: negative radius");
  if (dim == 1) return radius;
  if (radius == Scalar(0)) throw DomainError("greens_function: singular at the origin");
  if (dim == 2) return log(radius);
  return Scalar(-1) / pow(radius, Scalar(dim - 2));
}

struct PotentialSample {
  Vector nodes;
  Vector values;
};

/// Phi(x) = int |x - y| rho(|y|) dy over the symmetric interval [-R, R] spanned by
/// the mirrored profile, by composite trapezoid on the mirrored nodes.
PotentialSample potential_1d(const RadialProfile& density, const Vector& query_points);

/// Same, sampled at the profile's own nodes.
PotentialSample potential_1d(const RadialProfile& density);

/// int_0^min(r, R_max) rho(s) s^(N-1) ds of the piecewise-linear density.
/// Each cell is integrated exactly; the partial last cell uses the interpolated value at r.
double enclosed_integral(double r, const RadialProfile& density, int dim);

/// Radial acceleration delta * alpha(N) / r^(N-1) * enclosed_integral(r).
/// Returns 0 at r <= 0 (the bounded-density limit).
double radial_acceleration(double r, const RadialProfile& density, const ModelParams& params);

namespace detail {

/// int_a^x (rho_a + slope (s - a)) s^k ds, stable for narrow cells far from 0.
double linear_moment(double a, double x, double rho_a, double slope, int k);

}  // namespace detail

}  // namespace eplab
