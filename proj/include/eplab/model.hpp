#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace eplab {

using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Poisson coupling constant alpha(N): 1, 2pi, 4pi for N = 1, 2, 3 and the
/// unit-sphere surface area 2 pi^(N/2) / Gamma(N/2) beyond that.
double default_coupling(int dim);

/// Surface area omega_N of the unit sphere in R^N. The line case counts both
/// endpoints, omega_1 = 2, so that omega_N * int_0^R f(s) s^(N-1) ds is the
/// integral over the symmetric domain.
double unit_sphere_area(int dim);

/// gamma-law pressure K rho^gamma.
double pressure(double rho, double K, double gamma);

/// Physical configuration of the Euler / Euler-Poisson system.
struct ModelParams {
  int dim = 3;
  int delta = -1;  ///< -1 attractive, +1 repulsive, 0 no force
  double pressure_const = 0.0;
  double adiabatic_exp = 1.0;
  double coupling = 0.0;  ///< alpha(N); filled by make() unless overridden

  static ModelParams make(int dim, int delta, double K = 0.0, double gamma = 1.0,
                          std::optional<double> coupling = std::nullopt);

  /// Throws InvalidDimension / DomainError when an invariant is broken.
  void validate() const;

  bool pressureless() const { return pressure_const == 0.0; }
};

/// Radial function sampled on 0 = r_0 < r_1 < ... < r_m = R_max.
class RadialProfile {
 public:
  RadialProfile(Vector nodes, Vector values);

  const Vector& nodes() const { return nodes_; }
  const Vector& values() const { return values_; }
  Index size() const { return nodes_.size(); }
  double outer_radius() const { return nodes_[nodes_.size() - 1]; }

  /// Piecewise-linear interpolant; extended linearly past either end.
  double operator()(double r) const;

  bool is_nonnegative() const { return (values_.array() >= 0.0).all(); }

  /// Throws DomainError unless every sample is >= 0.
  void require_density() const;

 private:
  Vector nodes_;
  Vector values_;
};

enum class ProfileFamily { uniform, parabolic, gaussian, table, zero, linear };

ProfileFamily parse_profile_family(std::string_view name);
std::string_view profile_family_name(ProfileFamily family);

/// Closed-form family plus its parameters.
///   uniform    amplitude
///   parabolic  amplitude * (1 - (r/R)^2)
///   gaussian   amplitude * exp(-r^2 / (2 sigma^2)), truncated at R
///   table      piecewise-linear through `table`; R is the last table radius
///   zero       0
///   linear     slope * r
struct ProfileSpec {
  ProfileFamily family = ProfileFamily::uniform;
  double amplitude = 1.0;
  double radius = 1.0;
  double sigma = 0.5;
  double slope = 0.0;
  std::vector<std::pair<double, double>> table;
};

RadialProfile build_profile(const ProfileSpec& spec, int node_count);

}  // namespace eplab
