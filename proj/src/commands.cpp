#include "eplab/commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <string>

#include "eplab/errors.hpp"
#include "eplab/greens.hpp"
#include "eplab/trace_io.hpp"

namespace eplab {

namespace {

std::string sig12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

void cmd_predict(std::ostream& out, const ModelParams& params, double h0, double volume,
                 double mass) {
  params.validate();
  if (!(volume > 0.0)) throw DomainError("predict: volume must be positive");
  if (!(mass > 0.0)) throw DomainError("predict: mass must be positive");
  const IntegrationBound ib{h0, volume, params.coupling * mass};
  const PointwiseBound pb{h0, params.dim};

  out << "T_integration = ";
  if (params.delta == -1)
    out << sig12(integration_blowup_time(ib)) << '\n';
  else
    out << "none\n";
  const auto tp = params.delta <= 0 ? pointwise_blowup_time(pb) : std::nullopt;
  out << "T_pointwise = " << (tp ? sig12(*tp) : std::string("none")) << '\n';
  out << "cap = " << sig12(integration_blowup_cap(ib)) << '\n';
}

void cmd_riccati(std::ostream& out, const RiccatiBound& bound, double t_end, double step,
                 int stride) {
  if (stride < 1) throw DomainError("riccati: stride must be >= 1");
  const OdeTrace trace = integrate_comparison(bound, std::nullopt, t_end, step);
  const auto closed = [&](double t) {
    try {
      if (const auto* ib = std::get_if<IntegrationBound>(&bound))
        return integration_bound_eval(*ib, t);
      return pointwise_bound_eval(std::get<PointwiseBound>(bound), t);
    } catch (const PastSingularity&) {
      return std::numeric_limits<double>::quiet_NaN();
    }
  };
  out << "t,closed_form,numeric,rel_error\n";
  const std::size_t n = trace.times.size();
  for (std::size_t k = 0; k < n; ++k) {
    if (k % static_cast<std::size_t>(stride) != 0 && k + 1 != n) continue;
    const double t = trace.times[k];
    const double c = closed(t);
    const double v = trace.values[k];
    const double rel = std::abs(v - c) / std::max(1.0, std::abs(c));
    out << format_double(t) << ',' << format_double(c) << ',' << format_double(v) << ','
        << format_double(rel) << '\n';
  }
  if (trace.escape_time) out << "# escape_time = " << format_double(*trace.escape_time) << '\n';
}

SimResult cmd_simulate(std::ostream& out, const RunConfig& config) {
  config.model.validate();
  const RadialProfile density = build_profile(config.density, config.density_nodes);
  const RadialProfile velocity = build_profile(config.velocity, config.velocity_nodes);
  const FluidState initial = init_shells(density, velocity, config.shell_count, config.model.dim);
  SimResult result =
      run_simulation(initial, config.model, config.dt, config.t_end, config.thresholds);

  std::ofstream trace_file(config.trace_path);
  if (!trace_file) throw Error("cannot open trace file '" + config.trace_path + "'");
  write_trace_csv(trace_file, result.trace);
  trace_file.close();
  if (!trace_file) throw Error("failed writing trace file '" + config.trace_path + "'");

  std::ofstream report_file(config.report_path);
  if (!report_file) throw Error("cannot open report file '" + config.report_path + "'");
  write_report(report_file, result.report);
  report_file.close();
  if (!report_file) throw Error("failed writing report file '" + config.report_path + "'");

  write_report(out, result.report);
  return result;
}

Condi1Report cmd_functional(std::ostream& out, const ProfileSpec& profile, int nodes,
                            const ModelParams& params, double epsilon, double lo, double hi) {
  params.validate();
  const RadialProfile density = build_profile(profile, nodes);
  RadialDomain domain{lo, hi};
  if (lo < 0.0) {
    if (params.dim != 1 || std::abs(lo + hi) > 1e-12 * std::max(1.0, hi))
      throw DomainError("functional: negative bounds need dim = 1 and a symmetric interval");
    domain = {0.0, hi};
  }
  const double mass = total_mass(density, params.dim);
  const double value = pressure_functional(density, params.pressure_const, params.adiabatic_exp,
                                           params.dim, domain);
  const Condi1Report report = condi1_check(value, epsilon, params, mass);
  out << "functional = " << format_double(report.functional_value) << '\n'
      << "mass = " << format_double(mass) << '\n'
      << "threshold = " << format_double(report.threshold) << '\n'
      << "epsilon = " << format_double(report.epsilon) << '\n'
      << "satisfied = " << (report.satisfied ? "true" : "false") << '\n';
  return report;
}

void cmd_greens(std::ostream& out, const ModelParams& params, const std::vector<double>& radii,
                const RadialProfile* density) {
  params.validate();
  out << (density ? "r,G,enclosed,acceleration\n" : "r,G\n");
  for (const double r : radii) {
    std::string row = format_double(r) + ',' + format_double(greens_function(r, params.dim));
    if (density)
      row += ',' + format_double(enclosed_integral(r, *density, params.dim)) + ',' +
             format_double(radial_acceleration(r, *density, params));
    out << row << '\n';
  }
}

}  // namespace eplab
