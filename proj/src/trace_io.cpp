#include "eplab/trace_io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <optional>

namespace eplab {

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ptr);
}

void write_trace_csv(std::ostream& out, const DivergenceTrace& trace) {
  out << "t,H_integrated,H_pointwise_center,tan_bound,rational_bound,support_volume,"
         "frozen_volume,mass,cs_lhs,cs_rhs,min_density,max_density\n";
  for (std::size_t k = 0; k < trace.size(); ++k) {
    const std::array<double, 12> row{trace.times[k],          trace.h_integrated[k],
                                     trace.h_pointwise_center[k], trace.tan_bound[k],
                                     trace.rational_bound[k], trace.support_volume[k],
                                     trace.frozen_volume[k],  trace.mass[k],
                                     trace.cs_lhs[k],         trace.cs_rhs[k],
                                     trace.min_density[k],    trace.max_density[k]};
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << format_double(row[c]);
    out << '\n';
  }
}

namespace {

std::string optional_text(const std::optional<double>& v) {
  return v ? format_double(*v) : "none";
}

}  // namespace

void write_report(std::ostream& out, const SimReport& report) {
  out << "blowup_detected = " << (report.blowup_detected ? "true" : "false") << '\n'
      << "blowup_time = " << optional_text(report.blowup_time) << '\n'
      << "cause = " << blowup_cause_name(report.cause) << '\n'
      << "time_resolution = " << format_double(report.time_resolution) << '\n'
      << "predicted_T_integration = " << optional_text(report.predicted_T_integration) << '\n'
      << "predicted_T_pointwise = " << optional_text(report.predicted_T_pointwise) << '\n'
      << "max_cs_violation = " << format_double(report.max_cs_violation) << '\n'
      << "max_riccati_residual = " << format_double(report.max_riccati_residual) << '\n'
      << "max_integration_excess = " << optional_text(report.max_integration_excess) << '\n'
      << "outlived_integration_bound = " << (report.outlived_integration_bound ? "true" : "false")
      << '\n';
}

}  // namespace eplab
