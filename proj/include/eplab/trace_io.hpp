#pragma once

#include <ostream>
#include <string>

#include "eplab/lagrangian.hpp"

namespace eplab {

/// Shortest decimal text that reads back to the same double; `nan`, `inf`, `-inf`.
std::string format_double(double value);

/// Columns: t, H_integrated, H_pointwise_center, tan_bound, rational_bound,
/// support_volume, frozen_volume, mass, cs_lhs, cs_rhs, min_density, max_density.
void write_trace_csv(std::ostream& out, const DivergenceTrace& trace);

/// One `key = value` line per report field; absent optionals print `none`.
void write_report(std::ostream& out, const SimReport& report);

}  // namespace eplab
