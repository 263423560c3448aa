#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "eplab/commands.hpp"
#include "eplab/config.hpp"
#include "eplab/errors.hpp"

namespace {

struct ModelOptions {
  int dim = 3;
  int delta = -1;
  double K = 0.0;
  double gamma = 1.0;
  std::optional<double> alpha;

  void add_to(CLI::App* cmd, bool with_pressure) {
    cmd->add_option("--dim", dim, "spatial dimension")->capture_default_str();
    cmd->add_option("--delta", delta, "force sign: -1 attractive, 0 none, +1 repulsive")
        ->capture_default_str();
    cmd->add_option("--alpha", alpha, "override the coupling alpha(N)");
    if (with_pressure) {
      cmd->add_option("--K", K, "pressure constant")->capture_default_str();
      cmd->add_option("--gamma", gamma, "adiabatic exponent")->capture_default_str();
    }
  }
  eplab::ModelParams params() const { return eplab::ModelParams::make(dim, delta, K, gamma, alpha); }
};

struct ProfileOptions {
  std::string family = "parabolic";
  eplab::ProfileSpec spec;
  int nodes = 1001;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--family", family, "uniform, parabolic, gaussian, zero or linear")
        ->capture_default_str();
    cmd->add_option("--amplitude", spec.amplitude)->capture_default_str();
    cmd->add_option("--radius", spec.radius)->capture_default_str();
    cmd->add_option("--sigma", spec.sigma)->capture_default_str();
    cmd->add_option("--slope", spec.slope)->capture_default_str();
    cmd->add_option("--nodes", nodes)->capture_default_str();
  }
  eplab::ProfileSpec resolved() const {
    eplab::ProfileSpec s = spec;
    s.family = eplab::parse_profile_family(family);
    return s;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Radial Euler-Poisson blowup laboratory"};
  app.require_subcommand(1);

  auto* predict = app.add_subcommand("predict", "blowup-time predictions from initial data");
  ModelOptions predict_model;
  predict_model.add_to(predict, false);
  double h0 = 0.0;
  double volume = 1.0;
  double mass = 1.0;
  predict->add_option("--h0", h0, "initial divergence")->capture_default_str();
  predict->add_option("--volume", volume, "support volume |Omega|")->capture_default_str();
  predict->add_option("--mass", mass, "total mass")->capture_default_str();

  auto* riccati = app.add_subcommand("riccati", "closed form vs numeric comparison ODE");
  std::string kind = "integration";
  double r_h0 = 0.0;
  double r_volume = 1.0;
  double r_forcing = 1.0;
  int r_dim = 3;
  double r_t_end = 1.0;
  double r_step = 1e-4;
  int r_stride = 100;
  riccati->add_option("--kind", kind)
      ->check(CLI::IsMember({"integration", "pointwise"}))
      ->capture_default_str();
  riccati->add_option("--h0", r_h0)->capture_default_str();
  riccati->add_option("--volume", r_volume)->capture_default_str();
  riccati->add_option("--forcing", r_forcing, "alpha(N) M")->capture_default_str();
  riccati->add_option("--dim", r_dim)->capture_default_str();
  riccati->add_option("--t-end", r_t_end)->capture_default_str();
  riccati->add_option("--step", r_step)->capture_default_str();
  riccati->add_option("--stride", r_stride, "print every n-th step")->capture_default_str();

  auto* simulate = app.add_subcommand("simulate", "run a Lagrangian shell simulation");
  std::string config_path;
  simulate->add_option("config", config_path, "configuration file")->required();

  auto* functional = app.add_subcommand("functional", "pressure functional check");
  ModelOptions f_model;
  f_model.K = 1.0;
  f_model.gamma = 2.0;
  f_model.add_to(functional, true);
  ProfileOptions f_profile;
  f_profile.add_to(functional);
  double epsilon = 1e-6;
  double lo = 0.0;
  std::optional<double> hi;
  functional->add_option("--epsilon", epsilon)->capture_default_str();
  functional->add_option("--lo", lo, "domain start (1-D: -b for a symmetric domain)")
      ->capture_default_str();
  functional->add_option("--hi", hi, "domain end (default: profile radius)");

  auto* greens = app.add_subcommand("greens", "Green's function table");
  ModelOptions g_model;
  g_model.add_to(greens, false);
  std::vector<double> radii;
  greens->add_option("--r", radii, "radii to evaluate")->required();
  ProfileOptions g_profile;
  bool with_profile = false;
  greens->add_flag("--with-profile", with_profile, "also tabulate enclosed mass and acceleration");
  g_profile.add_to(greens);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*predict) {
      eplab::cmd_predict(std::cout, predict_model.params(), h0, volume, mass);
    } else if (*riccati) {
      eplab::RiccatiBound bound = eplab::IntegrationBound{r_h0, r_volume, r_forcing};
      if (kind == "pointwise") bound = eplab::PointwiseBound{r_h0, r_dim};
      eplab::cmd_riccati(std::cout, bound, r_t_end, r_step, r_stride);
    } else if (*simulate) {
      eplab::cmd_simulate(std::cout, eplab::load_config(config_path));
    } else if (*functional) {
      const eplab::ProfileSpec spec = f_profile.resolved();
      eplab::cmd_functional(std::cout, spec, f_profile.nodes, f_model.params(), epsilon, lo,
                            hi.value_or(spec.radius));
    } else if (*greens) {
      std::optional<eplab::RadialProfile> density;
      if (with_profile) density = eplab::build_profile(g_profile.resolved(), g_profile.nodes);
      eplab::cmd_greens(std::cout, g_model.params(), radii, density ? &*density : nullptr);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
