#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <variant>
#include <vector>

namespace eplab {

/// Comparison dynamics dH/dt = -H^2/|Omega| - alpha M for the integrated divergence.
struct IntegrationBound {
  double h0 = 0.0;
  double volume = 1.0;   ///< |Omega|
  double forcing = 1.0;  ///< alpha(N) M
  void validate() const;
};

/// Comparison dynamics dH/dt = -H^2/N along one characteristic.
struct PointwiseBound {
  double h0 = 0.0;
  int dim = 3;
  void validate() const;
};

using RiccatiBound = std::variant<IntegrationBound, PointwiseBound>;

// Raw closed forms. No domain checks; usable with any scalar type.

/// -sqrt(|Omega| aM) tan(sqrt(aM/|Omega|) t - atan(H0 / sqrt(|Omega| aM)))
template <typename Scalar>
Scalar tan_bound(Scalar h0, Scalar volume, Scalar forcing, Scalar t) {
  using std::atan;
  using std::sqrt;
  using std::tan;
  const Scalar scale = sqrt(volume * forcing);
  const Scalar rate = sqrt(forcing / volume);
  return -scale * tan(rate * t - atan(h0 / scale));
}

template <typename Scalar>
Scalar tan_bound_blowup_time(Scalar h0, Scalar volume, Scalar forcing) {
  using std::atan;
  using std::sqrt;
  return sqrt(volume / forcing) * (atan(h0 / sqrt(volume * forcing)) + Scalar(std::numbers::pi / 2));
}

/// N H0 / (N + H0 t)
template <typename Scalar>
Scalar rational_bound(Scalar h0, int dim, Scalar t) {
  const Scalar n(dim);
  return n * h0 / (n + h0 * t);
}

// Checked evaluators. Evaluation within 1e-12 of the singular time is rejected.

double integration_bound_eval(const IntegrationBound& bound, double t);
double integration_blowup_time(const IntegrationBound& bound);
/// Universal cap sqrt(|Omega| / aM) * pi, which every blowup time stays below.
double integration_blowup_cap(const IntegrationBound& bound);

double pointwise_bound_eval(const PointwiseBound& bound, double t);
/// -N/H0 for H0 < 0, none otherwise.
std::optional<double> pointwise_blowup_time(const PointwiseBound& bound);

/// Sampled forcing f(t), linearly interpolated and held constant outside the samples.
struct ForcingSamples {
  std::vector<double> times;
  std::vector<double> values;
  double operator()(double t) const;
};

struct OdeTrace {
  std::vector<double> times;
  std::vector<double> values;
  std::optional<double> escape_time;
  bool escaped() const { return escape_time.has_value(); }
};

/// RK4 integration of the comparison ODE with fixed step, stopping when |H|
/// exceeds `escape_threshold`. The escape time is refined by step halving over
/// the last step.
OdeTrace integrate_comparison(const RiccatiBound& bound,
                              const std::optional<ForcingSamples>& extra_forcing, double t_end,
                              double step, double escape_threshold = 1e9);

}  // namespace eplab
