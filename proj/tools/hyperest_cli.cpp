#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "hyperest/config.hpp"
#include "hyperest/errors.hpp"
#include "hyperest/experiments.hpp"
#include "hyperest/report_csv.hpp"

using namespace hyperest;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitAssumption = 3;

struct StudyOptions {
  std::string config;
  std::optional<int> q;
  std::optional<int> levels;
  std::optional<std::string> flux;
  std::optional<double> mu;
  std::optional<double> cfl;
  std::optional<double> cfl_cap;
  std::optional<std::string> stepper;
  std::optional<std::string> recon;
  std::optional<std::string> derivative_mode;
  std::optional<std::string> initial_projection;
  std::string out;
  std::string checkpoints_out;
  std::string plot_data;
  bool force = false;
};

void add_study_options(CLI::App* app, StudyOptions& o) {
  app->add_option("--config", o.config, "TOML run configuration");
  app->add_option("--q", o.q, "DG polynomial degree (selects the matched stepper/reconstruction)");
  app->add_option("--levels", o.levels, "number of refinement levels");
  app->add_option("--flux", o.flux, "central_w | llf | richtmyer_visc | roe_avg | roe_char");
  app->add_option("--mu", o.mu, "viscosity coefficient of richtmyer_visc");
  app->add_option("--cfl", o.cfl, "coarse ratio tau0/h0 (sets tau0)");
  app->add_option("--cfl-cap", o.cfl_cap, "upper limit accepted for tau0/h0");
  app->add_option("--stepper", o.stepper, "rk1 | rk2_heun | rk3_ssp | rk4_classic | ab2 | ab3");
  app->add_option("--recon", o.recon, "temporal reconstruction, e.g. H(1,0,0)");
  app->add_option("--derivative-mode", o.derivative_mode, "directional | backward_fd");
  app->add_option("--initial-projection", o.initial_projection, "auto | l2 | reconstruction");
  app->add_option("--out", o.out, "CSV output path (default: stdout)");
  app->add_option("--checkpoints-out", o.checkpoints_out, "per-checkpoint CSV output path");
  app->add_option("--plot-data", o.plot_data, "directory for two-column plot files");
  app->add_flag("--force", o.force, "report the bound even if the box assumption fails");
}

RunConfig build_config(Problem problem, const StudyOptions& o) {
  const int q = o.q.value_or(1);
  RunConfig cfg = problem == Problem::euler     ? euler_config(q)
                  : problem == Problem::burgers ? burgers_config(q)
                                                : advection_config(q);
  if (!o.config.empty()) cfg = load_config(o.config, cfg);
  cfg.problem = problem;
  if (o.q) {
    cfg.q = *o.q;
    apply_default_pairing(cfg);
  }
  if (o.levels) cfg.levels = *o.levels;
  if (o.flux) {
    cfg.flux.kind = parse_flux_kind(*o.flux);
    if (cfg.flux.kind == FluxKind::llf) cfg.flux.local_speed = true;
  }
  if (o.mu) cfg.flux.mu = *o.mu;
  if (o.cfl_cap) cfg.cfl_cap = *o.cfl_cap;
  if (o.cfl) cfg.tau0 = *o.cfl * cfg.h0;
  if (o.stepper) cfg.stepper = parse_stepper(*o.stepper);
  if (o.recon) {
    const DerivativeMode mode = cfg.recon.mode;
    cfg.recon = parse_recon(*o.recon);
    cfg.recon.mode = mode;
  }
  if (o.derivative_mode) {
    if (*o.derivative_mode == "directional") cfg.recon.mode = DerivativeMode::directional;
    else if (*o.derivative_mode == "backward_fd") cfg.recon.mode = DerivativeMode::backward_fd;
    else throw ConfigError("unknown derivative mode '" + *o.derivative_mode + "'");
  }
  if (o.initial_projection) cfg.initial_projection = parse_initial_projection(*o.initial_projection);
  cfg.force = cfg.force || o.force;
  return cfg;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << text;
}

void print_summary(const RunReport& report) {
  std::fprintf(stderr, "%-5s %-10s %-10s %-12s %-6s %-12s %-6s %-12s %s\n", "level", "h", "tau", "error_l2", "eoc",
               "residual_l2", "eoc", "bound", "box");
  for (std::size_t k = 0; k < report.levels.size(); ++k) {
    const LevelResult& lv = report.levels[k];
    if (!lv.ok) {
      std::fprintf(stderr, "%-5d %-10.4g %-10.4g failed: %s\n", lv.level, lv.h, lv.tau, lv.error.c_str());
      continue;
    }
    std::fprintf(stderr, "%-5d %-10.4g %-10.4g %-12.4e %-6.2f %-12.4e %-6.2f %-12.4e %s\n", lv.level, lv.h, lv.tau,
                 lv.error_l2, report.eoc_error[k], lv.residual_l2, report.eoc_residual[k], lv.estimator_bound,
                 lv.in_box ? "in" : "OUT");
  }
}

int run_pde(Problem problem, const StudyOptions& o) {
  const RunConfig cfg = build_config(problem, o);
  const RunReport report = run_study(cfg);
  print_summary(report);
  emit(o.out, write_csv(csv_rows(report)));
  if (!o.checkpoints_out.empty()) emit(o.checkpoints_out, write_checkpoint_csv(report));
  if (!o.plot_data.empty()) write_plot_data(report, o.plot_data);
  if (report.any_assumption_violation() && !cfg.force) return kExitAssumption;
  return report.all_ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"DG solver with a posteriori error estimation for 1D conservation laws"};
  app.require_subcommand(1);

  StudyOptions adv, eul, bur;
  add_study_options(app.add_subcommand("advection", "linear advection convergence study"), adv);
  add_study_options(app.add_subcommand("euler", "Euler pressure-wave convergence study"), eul);
  add_study_options(app.add_subcommand("burgers", "Burgers run past shock formation"), bur);

  auto* ode = app.add_subcommand("ode", "scalar ODE residual optimality study");
  std::string ode_problem_id = "linear_decay", ode_stepper = "rk4", ode_recon = "H(1,0,0)", ode_mode = "directional",
              ode_out;
  double ode_tau0 = 0.1;
  int ode_levels = 6;
  ode->add_option("--problem", ode_problem_id, "linear_decay | cubic_forced");
  ode->add_option("--stepper", ode_stepper, "time integrator");
  ode->add_option("--recon", ode_recon, "temporal reconstruction");
  ode->add_option("--derivative-mode", ode_mode, "exact_callable | directional | backward_fd");
  ode->add_option("--tau0", ode_tau0, "coarsest step");
  ode->add_option("--levels", ode_levels, "number of step halvings + 1");
  ode->add_option("--out", ode_out, "CSV output path (default: stdout)");

  auto* eoc_cmd = app.add_subcommand("eoc", "recompute EOC columns of a study CSV");
  std::string eoc_in, eoc_out;
  eoc_cmd->add_option("input", eoc_in, "study CSV")->required();
  eoc_cmd->add_option("--out", eoc_out, "output path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (app.got_subcommand("advection")) return run_pde(Problem::advection, adv);
    if (app.got_subcommand("euler")) return run_pde(Problem::euler, eul);
    if (app.got_subcommand("burgers")) return run_pde(Problem::burgers, bur);
    if (app.got_subcommand("ode")) {
      ReconSpec spec = parse_recon(ode_recon);
      if (ode_mode == "exact_callable") spec.mode = DerivativeMode::exact_callable;
      else if (ode_mode == "backward_fd") spec.mode = DerivativeMode::backward_fd;
      else if (ode_mode == "directional") spec.mode = DerivativeMode::directional;
      else throw ConfigError("unknown derivative mode '" + ode_mode + "'");
      spec.validate();
      const OdeStudy study = run_ode_study(ode_problem(ode_problem_id), parse_stepper(ode_stepper), spec, ode_tau0,
                                           ode_levels);
      std::ostringstream csv;
      csv << "level,tau,residual_linf,residual_l1,residual_l2,error_linf,error_l2,bound_linf,bound_l2,"
             "eoc_residual_linf,eoc_error_linf\n";
      for (std::size_t k = 0; k < study.levels.size(); ++k) {
        const OdeLevel& lv = study.levels[k];
        csv << k << ',' << format_double(lv.tau) << ',' << format_double(lv.residual.linf) << ','
            << format_double(lv.residual.l1) << ',' << format_double(lv.residual.l2) << ','
            << format_double(lv.error_linf) << ',' << format_double(lv.error_l2) << ','
            << format_double(lv.bound.bound_linf) << ',' << format_double(lv.bound.bound_l2) << ','
            << format_double(study.eoc_residual_linf[k]) << ',' << format_double(study.eoc_error_linf[k]) << '\n';
      }
      emit(ode_out, csv.str());
      return 0;
    }
    if (app.got_subcommand("eoc")) {
      std::ifstream in(eoc_in);
      if (!in) throw ConfigError("cannot open '" + eoc_in + "'");
      std::stringstream ss;
      ss << in.rdbuf();
      emit(eoc_out, write_csv(recompute_eoc(parse_csv(ss.str()))));
      return 0;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const UnsupportedError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const AssumptionViolation& e) {
    std::cerr << "assumption violated: " << e.what() << '\n';
    return kExitAssumption;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
