#pragma once

#include <ostream>
#include <vector>

#include "eplab/config.hpp"
#include "eplab/functionals.hpp"
#include "eplab/lagrangian.hpp"
#include "eplab/model.hpp"
#include "eplab/riccati.hpp"

namespace eplab {

/// Blowup-time predictions for initial divergence H0 over support volume
/// |Omega| holding mass M. The integration time is printed for the attractive
/// case only, the pointwise time for delta <= 0 and H0 < 0.
void cmd_predict(std::ostream& out, const ModelParams& params, double h0, double volume,
                 double mass);

/// CSV dump `t,closed_form,numeric,rel_error` of the comparison ODE against its
/// closed form, sampled every `stride` steps up to t_end or the escape time.
void cmd_riccati(std::ostream& out, const RiccatiBound& bound, double t_end, double step,
                 int stride = 100);

/// Runs the configured simulation and writes the trace CSV and report files.
/// A short summary goes to `out`.
SimResult cmd_simulate(std::ostream& out, const RunConfig& config);

/// Pressure functional over `domain` and the resulting check against -delta alpha M.
/// In one dimension the domain may be given as the symmetric [-b, b].
Condi1Report cmd_functional(std::ostream& out, const ProfileSpec& profile, int nodes,
                            const ModelParams& params, double epsilon, double lo, double hi);

/// Table of G(r) at the given radii; with a density profile, also the enclosed
/// integral and radial acceleration.
void cmd_greens(std::ostream& out, const ModelParams& params, const std::vector<double>& radii,
                const RadialProfile* density = nullptr);

}  // namespace eplab
