#include "eplab/riccati.hpp"

#include <algorithm>
#include <cmath>
#include <type_traits>

#include "eplab/errors.hpp"
#include "eplab/rk4.hpp"

namespace eplab {

namespace {

constexpr double kSingularGuard = 1e-12;

}  // namespace

void IntegrationBound::validate() const {
  if (!(volume > 0.0)) throw DomainError("integration bound needs |Omega| > 0");
  if (!(forcing > 0.0)) throw DomainError("integration bound needs alpha(N) M > 0");
  if (!std::isfinite(h0)) throw DomainError("integration bound needs a finite H0");
}

void PointwiseBound::validate() const {
  if (dim < 1) throw InvalidDimension(dim);
  if (!std::isfinite(h0)) throw DomainError("pointwise bound needs a finite H0");
}

double integration_blowup_time(const IntegrationBound& bound) {
  bound.validate();
  return tan_bound_blowup_time(bound.h0, bound.volume, bound.forcing);
}

double integration_blowup_cap(const IntegrationBound& bound) {
  bound.validate();
  return std::sqrt(bound.volume / bound.forcing) * std::numbers::pi;
}

double integration_bound_eval(const IntegrationBound& bound, double t) {
  const double T = integration_blowup_time(bound);
  if (!(t >= 0.0)) throw DomainError("integration bound: negative time");
  if (t >= T - kSingularGuard) throw PastSingularity(t, T);
  return tan_bound(bound.h0, bound.volume, bound.forcing, t);
}

std::optional<double> pointwise_blowup_time(const PointwiseBound& bound) {
  bound.validate();
  if (bound.h0 >= 0.0) return std::nullopt;
  return -static_cast<double>(bound.dim) / bound.h0;
}

double pointwise_bound_eval(const PointwiseBound& bound, double t) {
  bound.validate();
  if (!(t >= 0.0)) throw DomainError("pointwise bound: negative time");
  const auto T = pointwise_blowup_time(bound);
  if (T && t >= *T - kSingularGuard) throw PastSingularity(t, *T);
  return rational_bound(bound.h0, bound.dim, t);
}

double ForcingSamples::operator()(double t) const {
  if (times.empty()) return 0.0;
  if (t <= times.front()) return values.front();
  if (t >= times.back()) return values.back();
  const auto hi = std::upper_bound(times.begin(), times.end(), t);
  const auto k = static_cast<std::size_t>(hi - times.begin());
  const double w = (t - times[k - 1]) / (times[k] - times[k - 1]);
  return values[k - 1] + w * (values[k] - values[k - 1]);
}

OdeTrace integrate_comparison(const RiccatiBound& bound,
                              const std::optional<ForcingSamples>& extra_forcing, double t_end,
                              double step, double escape_threshold) {
  if (!(step > 0.0)) throw DomainError("integrate_comparison: step must be positive");
  if (!(escape_threshold > 0.0))
    throw DomainError("integrate_comparison: escape threshold must be positive");
  if (!(t_end > 0.0)) throw DomainError("integrate_comparison: t_end must be positive");
  if (extra_forcing && extra_forcing->times.size() != extra_forcing->values.size())
    throw DomainError("integrate_comparison: forcing samples are ragged");

  double inv_quadratic = 0.0;
  double forcing = 0.0;
  double h0 = 0.0;
  std::visit(
      [&](const auto& b) {
        b.validate();
        h0 = b.h0;
        using B = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<B, IntegrationBound>) {
          inv_quadratic = 1.0 / b.volume;
          forcing = b.forcing;
        } else {
          inv_quadratic = 1.0 / b.dim;
        }
      },
      bound);

  auto rhs = [&](double t, double h) {
    const double f = forcing + (extra_forcing ? (*extra_forcing)(t) : 0.0);
    return -h * h * inv_quadratic - f;
  };

  OdeTrace trace;
  trace.times.push_back(0.0);
  trace.values.push_back(h0);

  double t = 0.0;
  double h = h0;
  const auto fired = [&](double candidate) {
    return !std::isfinite(candidate) || std::abs(candidate) > escape_threshold;
  };
  const auto observe = [&](double tk, double hk) {
    trace.times.push_back(tk);
    trace.values.push_back(hk);
  };
  const auto event = march(h, t, t_end, step, rhs, fired, observe);
  if (event) {
    if (std::isnan(event->state)) throw NumericFailure("comparison ODE produced NaN", event->time);
    trace.escape_time = event->time;
  }
  return trace;
}

}  // namespace eplab
