#include "eplab/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "eplab/errors.hpp"

namespace eplab {

double unit_sphere_area(int dim) {
  if (dim < 1) throw InvalidDimension(dim);
  if (dim == 1) return 2.0;
  const double half = 0.5 * dim;
  return 2.0 * std::pow(std::numbers::pi, half) / std::tgamma(half);
}

double default_coupling(int dim) {
  if (dim < 1) throw InvalidDimension(dim);
  switch (dim) {
    case 1: return 1.0;
    case 2: return 2.0 * std::numbers::pi;
    case 3: return 4.0 * std::numbers::pi;
    default: return unit_sphere_area(dim);
  }
}

double pressure(double rho, double K, double gamma) {
  if (!(rho >= 0.0)) throw DomainError("pressure: negative density");
  if (!(K >= 0.0)) throw DomainError("pressure: negative pressure constant");
  if (!(gamma >= 1.0)) throw DomainError("pressure: adiabatic exponent below 1");
  if (rho == 0.0) return 0.0;
  return K * std::pow(rho, gamma);
}

ModelParams ModelParams::make(int dim, int delta, double K, double gamma,
                              std::optional<double> coupling) {
  if (dim < 1) throw InvalidDimension(dim);
  ModelParams p;
  p.dim = dim;
  p.delta = delta;
  p.pressure_const = K;
  p.adiabatic_exp = gamma;
  p.coupling = coupling.value_or(default_coupling(dim));
  p.validate();
  return p;
}

void ModelParams::validate() const {
  if (dim < 1) throw InvalidDimension(dim);
  if (delta < -1 || delta > 1) throw DomainError("delta must be -1, 0 or +1");
  if (!(pressure_const >= 0.0)) throw DomainError("pressure constant K must be >= 0");
  if (!(adiabatic_exp >= 1.0)) throw DomainError("adiabatic exponent gamma must be >= 1");
  if (!(coupling > 0.0) || !std::isfinite(coupling))
    throw DomainError("coupling alpha(N) must be positive");
}

RadialProfile::RadialProfile(Vector nodes, Vector values)
    : nodes_(std::move(nodes)), values_(std::move(values)) {
  if (nodes_.size() < 2) throw DomainError("radial profile needs at least two nodes");
  if (nodes_.size() != values_.size())
    throw DomainError("radial profile: node and value counts differ");
  if (nodes_[0] != 0.0) throw DomainError("radial profile must start at r = 0");
  for (Index i = 1; i < nodes_.size(); ++i) {
    if (!(nodes_[i] > nodes_[i - 1]))
      throw DomainError("radial profile nodes must be strictly increasing");
  }
  if (!values_.allFinite()) throw DomainError("radial profile has nonfinite samples");
}

double RadialProfile::operator()(double r) const {
  const Index n = nodes_.size();
  const double* begin = nodes_.data();
  // cell index k with nodes_[k] <= r < nodes_[k+1], clamped to [0, n-2]
  Index k = std::upper_bound(begin, begin + n, r) - begin - 1;
  k = std::clamp<Index>(k, 0, n - 2);
  const double w = (r - nodes_[k]) / (nodes_[k + 1] - nodes_[k]);
  return values_[k] + w * (values_[k + 1] - values_[k]);
}

void RadialProfile::require_density() const {
  if (!is_nonnegative()) throw DomainError("density profile has negative samples");
}

namespace {

struct FamilyName {
  ProfileFamily family;
  std::string_view name;
};

constexpr FamilyName kFamilies[] = {
    {ProfileFamily::uniform, "uniform"}, {ProfileFamily::parabolic, "parabolic"},
    {ProfileFamily::gaussian, "gaussian"}, {ProfileFamily::table, "table"},
    {ProfileFamily::zero, "zero"},       {ProfileFamily::linear, "linear"},
};

double table_value(const std::vector<std::pair<double, double>>& table, double r) {
  auto hi = std::upper_bound(table.begin(), table.end(), r,
                             [](double x, const auto& p) { return x < p.first; });
  if (hi == table.begin()) return table.front().second;
  if (hi == table.end()) return table.back().second;
  auto lo = std::prev(hi);
  const double w = (r - lo->first) / (hi->first - lo->first);
  return lo->second + w * (hi->second - lo->second);
}

}  // namespace

ProfileFamily parse_profile_family(std::string_view name) {
  for (const auto& f : kFamilies)
    if (f.name == name) return f.family;
  throw DomainError("unknown profile family '" + std::string(name) + "'");
}

std::string_view profile_family_name(ProfileFamily family) {
  for (const auto& f : kFamilies)
    if (f.family == family) return f.name;
  return "?";
}

RadialProfile build_profile(const ProfileSpec& spec, int node_count) {
  if (node_count < 3) throw DomainError("build_profile: node_count must be >= 3");

  double R = spec.radius;
  if (spec.family == ProfileFamily::table) {
    const auto& t = spec.table;
    if (t.size() < 2) throw DomainError("table profile needs at least two points");
    if (t.front().first != 0.0) throw DomainError("table profile must start at r = 0");
    for (std::size_t i = 1; i < t.size(); ++i)
      if (!(t[i].first > t[i - 1].first))
        throw DomainError("table radii must be strictly increasing");
    R = t.back().first;
  }
  if (!(R > 0.0) || !std::isfinite(R)) throw DomainError("profile radius must be positive");

  Vector nodes(node_count);
  for (Index i = 0; i < node_count; ++i)
    nodes[i] = R * static_cast<double>(i) / static_cast<double>(node_count - 1);
  Vector values(node_count);
  for (Index i = 0; i < node_count; ++i) {
    const double r = nodes[i];
    switch (spec.family) {
      case ProfileFamily::uniform: values[i] = spec.amplitude; break;
      case ProfileFamily::parabolic: {
        const double x = r / R;
        values[i] = spec.amplitude * (1.0 - x * x);
        break;
      }
      case ProfileFamily::gaussian:
        if (!(spec.sigma > 0.0)) throw DomainError("gaussian profile needs sigma > 0");
        values[i] = spec.amplitude * std::exp(-r * r / (2.0 * spec.sigma * spec.sigma));
        break;
      case ProfileFamily::table: values[i] = table_value(spec.table, r); break;
      case ProfileFamily::zero: values[i] = 0.0; break;
      case ProfileFamily::linear: values[i] = spec.slope * r; break;
    }
  }
  // the parabola's last node is 1 - 1 = 0 up to rounding
  if (spec.family == ProfileFamily::parabolic) values[node_count - 1] = 0.0;
  return RadialProfile(nodes, values);
}

}  // namespace eplab
