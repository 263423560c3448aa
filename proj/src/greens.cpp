#include "eplab/greens.hpp"

#include <cmath>

namespace eplab {

namespace detail {

namespace {

// x^p - a^p = (x - a) * sum_i x^i a^(p-1-i), with no cancellation.
double pow_diff(double a, double x, int p) {
  if (a == 0.0) return std::pow(x, p);
  double sum = 0.0;
  double xi = 1.0;
  for (int i = 0; i < p; ++i) {
    sum += xi * std::pow(a, p - 1 - i);
    xi *= x;
  }
  return (x - a) * sum;
}

}  // namespace

double linear_moment(double a, double x, double rho_a, double slope, int k) {
  const double d1 = pow_diff(a, x, k + 1) / (k + 1);
  if (slope == 0.0) return rho_a * d1;
  // int_a^x (s - a) s^k ds
  const double shifted = pow_diff(a, x, k + 2) / (k + 2) - a * d1;
  return rho_a * d1 + slope * shifted;
}

}  // namespace detail

PotentialSample potential_1d(const RadialProfile& density, const Vector& query_points) {
  density.require_density();
  if (!query_points.allFinite()) throw DomainError("potential_1d: nonfinite query point");

  const Vector& r = density.nodes();
  const Vector& rho = density.values();
  const Index m = r.size();

  // mirrored grid y_0 = -R < ... < y_{2m-2} = R with trapezoid weights
  const Index n = 2 * m - 1;
  Vector y(n);
  Vector w(n);
  Vector f(n);
  for (Index i = 0; i < m; ++i) {
    y[m - 1 - i] = -r[i];
    y[m - 1 + i] = r[i];
    f[m - 1 - i] = rho[i];
    f[m - 1 + i] = rho[i];
  }
  w.setZero();
  for (Index i = 0; i + 1 < n; ++i) {
    const double h = 0.5 * (y[i + 1] - y[i]);
    w[i] += h;
    w[i + 1] += h;
  }
  const Vector wf = w.cwiseProduct(f);

  PotentialSample out{query_points, Vector(query_points.size())};
  for (Index q = 0; q < query_points.size(); ++q) {
    out.values[q] = ((y.array() - query_points[q]).abs() * wf.array()).sum();
  }
  return out;
}

PotentialSample potential_1d(const RadialProfile& density) {
  return potential_1d(density, density.nodes());
}

double enclosed_integral(double r, const RadialProfile& density, int dim) {
  if (dim < 1) throw InvalidDimension(dim);
  if (!(r >= 0.0)) throw DomainError("enclosed_integral: negative radius");
  const Vector& s = density.nodes();
  const Vector& rho = density.values();
  const int k = dim - 1;

  double total = 0.0;
  for (Index i = 0; i + 1 < s.size(); ++i) {
    const double a = s[i];
    if (a >= r) break;
    const double b = s[i + 1];
    const double slope = (rho[i + 1] - rho[i]) / (b - a);
    total += detail::linear_moment(a, std::min(b, r), rho[i], slope, k);
  }
  return total;
}

double radial_acceleration(double r, const RadialProfile& density, const ModelParams& params) {
  if (params.delta == 0 || r <= 0.0) return 0.0;
  const double enclosed = enclosed_integral(r, density, params.dim);
  return params.delta * params.coupling * enclosed / std::pow(r, params.dim - 1);
}

}  // namespace eplab
