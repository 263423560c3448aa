#include "eplab/functionals.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "eplab/errors.hpp"
#include "eplab/greens.hpp"

namespace eplab {

double total_mass(const RadialProfile& density, int dim) {
  density.require_density();
  const double m = unit_sphere_area(dim) * enclosed_integral(density.outer_radius(), density, dim);
  if (!(m > 0.0)) throw DomainError("total_mass: density profile is identically zero");
  return m;
}

Eigen::MatrixXd fd_weights(double x0, std::span<const double> x, int max_order) {
  const auto n = static_cast<Index>(x.size());
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(max_order + 1, n);
  double c1 = 1.0;
  double c4 = x[0] - x0;
  c(0, 0) = 1.0;
  for (Index i = 1; i < n; ++i) {
    const Index mn = std::min<Index>(i, max_order);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[i] - x0;
    for (Index j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (Index k = mn; k >= 1; --k)
          c(k, i) = c1 * (static_cast<double>(k) * c(k - 1, i - 1) - c5 * c(k, i - 1)) / c2;
        c(0, i) = -c1 * c5 * c(0, i - 1) / c2;
      }
      for (Index k = mn; k >= 1; --k)
        c(k, j) = (c4 * c(k, j) - static_cast<double>(k) * c(k - 1, j)) / c3;
      c(0, j) = c4 * c(0, j) / c3;
    }
    c1 = c2;
  }
  return c;
}

namespace {

// d-th derivative at node i from the stencil [first, first + width).
double stencil_derivative(const Vector& x, const Vector& f, Index i, Index first, Index width,
                          int order) {
  const std::span<const double> pts(x.data() + first, static_cast<std::size_t>(width));
  const Eigen::MatrixXd w = fd_weights(x[i], pts, order);
  return w.row(order).dot(f.segment(first, width));
}

Vector derivative(const Vector& x, const Vector& f, int order) {
  const Index n = x.size();
  const Index end_width = order + 2;  // second-order one-sided stencil
  if (n < end_width) throw InsufficientData("finite differences need more nodes");
  Vector d(n);
  d[0] = stencil_derivative(x, f, 0, 0, end_width, order);
  for (Index i = 1; i + 1 < n; ++i) d[i] = stencil_derivative(x, f, i, i - 1, 3, order);
  d[n - 1] = stencil_derivative(x, f, n - 1, n - end_width, end_width, order);
  return d;
}

// Quadratic interpolation of g at r from the three nodes nearest to it.
double quadratic_at(const Vector& x, const Vector& g, double r) {
  const Index n = x.size();
  Index k = std::upper_bound(x.data(), x.data() + n, r) - x.data() - 1;
  k = std::clamp<Index>(k, 0, n - 2);
  if (r - x[k] < x[k + 1] - r) --k;
  k = std::clamp<Index>(k, 0, n - 3);
  const std::array<double, 3> pts{x[k], x[k + 1], x[k + 2]};
  const Eigen::MatrixXd w = fd_weights(r, pts, 0);
  return w.row(0).dot(g.segment(k, 3));
}

// Composite Simpson on nonuniform nodes; a trailing odd interval is integrated
// with the quadratic through the last three nodes.
double simpson(const std::vector<double>& x, const std::vector<double>& f) {
  const std::size_t n = x.size();
  double sum = 0.0;
  std::size_t i = 0;
  for (; i + 2 < n; i += 2) {
    const double h0 = x[i + 1] - x[i];
    const double h1 = x[i + 2] - x[i + 1];
    const double s = h0 + h1;
    sum += s / 6.0 *
           ((2.0 - h1 / h0) * f[i] + s * s / (h0 * h1) * f[i + 1] + (2.0 - h0 / h1) * f[i + 2]);
  }
  if (i + 1 < n) {
    const double h0 = x[i] - x[i - 1];
    const double h1 = x[i + 1] - x[i];
    sum += -h1 * h1 * h1 / (6.0 * h0 * (h0 + h1)) * f[i - 1] +
           h1 * (3.0 * h0 + h1) / (6.0 * h0) * f[i] +
           h1 * (3.0 * h0 + 2.0 * h1) / (6.0 * (h0 + h1)) * f[i + 1];
  }
  return sum;
}

}  // namespace

Vector first_derivative(const Vector& nodes, const Vector& values) {
  return derivative(nodes, values, 1);
}

Vector second_derivative(const Vector& nodes, const Vector& values) {
  return derivative(nodes, values, 2);
}

Vector divergence_field(const FluidState& state) {
  if (state.size() < 3) throw InsufficientData("divergence_field needs at least 3 shells");
  state.require_ordered();
  const Vector& r = state.shell_radius;
  const Vector& u = state.shell_velocity;
  Vector div = first_derivative(r, u);
  div.array() += (state.dim - 1) * u.array() / r.array();
  return div;
}

double support_volume(const FluidState& state) {
  return ball_volume(state.outer_radius(), state.dim);
}

namespace {

Vector support_cell_volumes(const FluidState& state) {
  const Vector edges = state.support_edges();
  const Index n = state.size();
  Vector vol(n);
  for (Index j = 0; j < n; ++j)
    vol[j] = ball_volume(edges[j + 1], state.dim) - ball_volume(edges[j], state.dim);
  return vol;
}

}  // namespace

double divergence_integral(const FluidState& state) {
  const Vector div = divergence_field(state);
  return div.dot(support_cell_volumes(state));
}

double divergence_flux(const FluidState& state) {
  state.require_ordered();
  const double R = state.outer_radius();
  return unit_sphere_area(state.dim) * std::pow(R, state.dim - 1) *
         state.shell_velocity[state.size() - 1];
}

CsPair cauchy_schwarz_gap(const FluidState& state) {
  const Vector div = divergence_field(state);
  const Vector vol = support_cell_volumes(state);
  const double H = div.dot(vol);
  CsPair out;
  out.lhs = H * H / support_volume(state);
  out.rhs = div.cwiseAbs2().dot(vol);
  return out;
}

double pressure_functional(const RadialProfile& density, double K, double gamma, int dim,
                           RadialDomain domain) {
  if (dim < 1) throw InvalidDimension(dim);
  if (!(gamma > 1.0)) throw DomainError("pressure functional is defined for gamma > 1 only");
  if (!(K >= 0.0)) throw DomainError("pressure functional: negative K");
  density.require_density();
  const Vector& x = density.nodes();
  const Vector& rho = density.values();
  const double R = density.outer_radius();
  const double tol = 1e-12 * R;
  if (!(domain.lo >= -tol && domain.hi <= R + tol && domain.lo < domain.hi))
    throw DomainError("pressure functional: domain must be a sub-interval of [0, R_max]");
  const double lo = std::max(domain.lo, 0.0);
  const double hi = std::min(domain.hi, R);

  const Vector d1 = first_derivative(x, rho);
  const Vector d2 = second_derivative(x, rho);
  const double omega = unit_sphere_area(dim);

  const Index n = x.size();
  Vector g(n);
  for (Index i = 0; i < n; ++i) {
    const double r = x[i];
    const double lap = (r > 0.0) ? d2[i] + (dim - 1) * d1[i] / r : dim * d2[i];
    const double grad_term = (d1[i] == 0.0) ? 0.0 : (gamma - 1.0) * std::pow(rho[i], gamma - 2.0) * d1[i] * d1[i];
    const double lap_term = std::pow(rho[i], gamma - 1.0) * lap;
    g[i] = K * gamma * (grad_term + lap_term) * omega * std::pow(r, dim - 1);
  }

  std::vector<double> xs;
  std::vector<double> gs;
  Index inside = 0;
  for (Index i = 0; i < n; ++i) {
    if (x[i] < lo - tol || x[i] > hi + tol) continue;
    ++inside;
    if (!std::isfinite(g[i]))
      throw DomainError("pressure functional: integrand is singular at a vacuum node (gamma < 2)");
    xs.push_back(x[i]);
    gs.push_back(g[i]);
  }
  if (inside < 5) throw InsufficientData("pressure functional needs at least 5 nodes in the domain");
  if (xs.front() > lo + tol) {
    xs.insert(xs.begin(), lo);
    gs.insert(gs.begin(), quadratic_at(x, g, lo));
  }
  if (xs.back() < hi - tol) {
    xs.push_back(hi);
    gs.push_back(quadratic_at(x, g, hi));
  }
  return simpson(xs, gs);
}

Condi1Report condi1_check(double functional_value, double epsilon, const ModelParams& params,
                          double mass) {
  if (!(epsilon > 0.0)) throw DomainError("condi1: epsilon must be positive");
  if (!(mass > 0.0)) throw DomainError("condi1: mass must be positive");
  Condi1Report report;
  report.functional_value = functional_value;
  report.epsilon = epsilon;
  report.threshold = -params.delta * params.coupling * mass;
  report.satisfied = functional_value + epsilon >= report.threshold;
  return report;
}

double density_along_characteristic(double rho0, std::span<const double> times,
                                    std::span<const double> divergence) {
  if (!(rho0 > 0.0)) throw DomainError("density_along_characteristic: rho0 must be positive");
  if (times.size() != divergence.size())
    throw DomainError("density_along_characteristic: ragged samples");
  double exponent = 0.0;
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (!std::isfinite(divergence[k]) || !std::isfinite(times[k]))
      throw NumericFailure("nonfinite divergence sample", times[k]);
    if (k > 0) exponent += 0.5 * (times[k] - times[k - 1]) * (divergence[k] + divergence[k - 1]);
  }
  return rho0 * std::exp(-exponent);
}

}  // namespace eplab
