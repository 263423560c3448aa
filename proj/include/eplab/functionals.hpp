#pragma once

#include <span>

#include "eplab/fluid_state.hpp"
#include "eplab/model.hpp"

namespace eplab {

/// M = omega_N int_0^R rho(s) s^(N-1) ds.
double total_mass(const RadialProfile& density, int dim);

/// div u = du/dr + (N-1) u / r at every shell. du/dr uses second-order finite
/// differences over the (nonuniform) shell radii, one-sided at both ends.
Vector divergence_field(const FluidState& state);

/// H = int_Omega div u dx, each shell's divergence weighted by the volume of its
/// cell in the tiling of [0, R_outer].
double divergence_integral(const FluidState& state);

/// Flux form of the same integral, omega_N R_outer^(N-1) u(R_outer).
double divergence_flux(const FluidState& state);

/// Current support volume omega_N R_outer^N / N.
double support_volume(const FluidState& state);

struct CsPair {
  double lhs = 0.0;  ///< H^2 / |Omega|
  double rhs = 0.0;  ///< int (div u)^2 dx
  double gap() const { return rhs - lhs; }
};

CsPair cauchy_schwarz_gap(const FluidState& state);

/// Radial sub-interval [lo, hi] of a profile's support. In one dimension the
/// interval stands for the symmetric pair [-hi, -lo] and [lo, hi].
struct RadialDomain {
  double lo = 0.0;
  double hi = 0.0;
};

/// int_domain K gamma [(gamma-1) rho^(gamma-2) |grad rho|^2 + rho^(gamma-1) lap rho] dx
/// with finite-difference derivatives on the profile nodes and composite Simpson
/// quadrature against the radial volume element omega_N r^(N-1).
double pressure_functional(const RadialProfile& density, double K, double gamma, int dim,
                           RadialDomain domain);

struct Condi1Report {
  double functional_value = 0.0;
  double epsilon = 0.0;
  double threshold = 0.0;  ///< -delta alpha(N) M
  bool satisfied = false;  ///< functional_value + epsilon >= threshold
};

Condi1Report condi1_check(double functional_value, double epsilon, const ModelParams& params,
                          double mass);

/// rho0 exp(-int_0^t div u) along one characteristic, trapezoid in time.
double density_along_characteristic(double rho0, std::span<const double> times,
                                    std::span<const double> divergence);

/// Finite-difference weights (Fornberg). Row d of the result holds the weights
/// of the d-th derivative at `x0` over the stencil points.
Eigen::MatrixXd fd_weights(double x0, std::span<const double> stencil, int max_order);

/// First and second derivatives of samples on strictly increasing nodes:
/// three-point centered stencils inside, one-sided second-order stencils at the ends.
Vector first_derivative(const Vector& nodes, const Vector& values);
Vector second_derivative(const Vector& nodes, const Vector& values);

}  // namespace eplab
