#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hyperest/estimator.hpp"
#include "hyperest/numerical_flux.hpp"
#include "hyperest/spacetime_recon.hpp"
#include "hyperest/temporal_recon.hpp"
#include "hyperest/time_integration.hpp"

namespace hyperest {

enum class Problem { advection, burgers, euler };

std::string to_string(Problem problem);
Problem parse_problem(const std::string& name);

/// How u_h(0) is obtained from u0. `automatic` uses the reconstruction-compatible
/// projection when the flux supports it and the L2 projection otherwise.
enum class InitialProjection { automatic, l2, reconstruction };

std::string to_string(InitialProjection mode);
InitialProjection parse_initial_projection(const std::string& name);

struct RunConfig {
  Problem problem = Problem::advection;
  double speed = 8.0;
  double gamma = 1.4;
  /// cosine: 1 - cos(pi x)/2; sine: 0.5 + sin(pi x); pressure_wave: rho=1, u=1,
  /// p = 1.3 + sin(pi x)/2; constant: `constant_value` (euler: rho=1, u=1, p=1).
  std::string initial = "cosine";
  double constant_value = 1.0;
  InitialProjection initial_projection = InitialProjection::automatic;
  double domain_left = 0.0;
  double domain_right = 2.0;
  double t_end = 0.4;
  int q = 1;
  StepperFamily stepper = StepperFamily::rk2_heun;
  ReconSpec recon{0, 0, -1, DerivativeMode::directional};
  FluxSpec flux{FluxKind::richtmyer_visc, 0.0, 0.5, 1};
  /// Flux lambda follows tau/h of each level unless set explicitly.
  bool lambda_from_grid = true;
  int levels = 5;
  double h0 = 0.125;
  double tau0 = 0.002;
  std::vector<double> checkpoints{0.1, 0.2, 0.3, 0.4};
  double cfl_cap = 0.13;
  int entropy_resolution = 11;
  double safety = 1.05;
  double box_padding = 0.1;
  std::optional<CompactBox> box;
  bool force = false;
  /// Reference solutions: h / reference_factor, tau / reference_tau_factor, degree q+1, rk4.
  int reference_factor = 4;
  int reference_tau_factor = 8;
  ResidualOptions residual;

  /// Throws ConfigError (CFL cap, grid/checkpoint alignment, pairing, ranges).
  void validate() const;
  int cells(int level) const;
  double h(int level) const;
  double tau(int level) const;
  int steps(int level) const;
};

/// Matched DG pairing for degree q: q=0 rk1+H(0,0,-1), q=1 rk2+H(0,0,-1),
/// q=2 rk3+H(0,0,0), q=3 rk4+H(1,0,0).
void apply_default_pairing(RunConfig& cfg);

/// Preset configurations for the two benchmark problems and a Burgers shock run.
RunConfig advection_config(int q);
RunConfig euler_config(int q);
RunConfig burgers_config(int q);

LawPtr make_law(const RunConfig& cfg);
StateFunction initial_condition(const RunConfig& cfg);

/// Discrete initial data on `mesh` according to cfg.initial_projection.
DGFunction initial_data(const RunConfig& cfg, const ConservationLaw& law, const FluxSpec& flux, MeshPtr mesh,
                        int degree);

/// u0((x - a t) wrapped into [left, right)).
double exact_advection(const std::function<double(double)>& u0, double speed, double t, double x, double left,
                       double right);

struct EocRow {
  int level = 0;
  double h = 0.0;
  double value = 0.0;
  /// NaN on the first level or when a value is not positive.
  double eoc = 0.0;
};

std::vector<EocRow> eoc(const std::vector<std::pair<double, double>>& values);

struct CheckpointResult {
  double t = 0.0;
  /// ||u(t) - u_h(t)||^2, NaN without an exact or reference solution.
  double error_sq = 0.0;
  double recon_gap_sq = 0.0;
  double residual_sq = 0.0;
  double exp_factor = 1.0;
  double bound = 0.0;
};

struct LevelResult {
  int level = 0;
  int cells = 0;
  double h = 0.0;
  double tau = 0.0;
  bool ok = false;
  std::string error;
  bool assumption_violation = false;
  double error_l2 = 0.0;
  double residual_l2 = 0.0;
  double recon_gap = 0.0;
  /// Bound on the squared L2 error at the final checkpoint.
  double estimator_bound = 0.0;
  bool in_box = false;
  EntropyConstants constants;
  std::vector<CheckpointResult> checkpoints;
  std::vector<double> sup_dx;
};

struct RunReport {
  RunConfig config;
  std::vector<LevelResult> levels;
  std::vector<double> eoc_error;
  std::vector<double> eoc_residual;

  bool all_ok() const;
  bool any_assumption_violation() const;
};

/// Finest-level reference for problems without an exact solution: degree q+1,
/// rk4, mesh and step refined by the configured factors. One DG function per checkpoint.
std::vector<DGFunction> euler_reference(const RunConfig& cfg);

/// L2 projection of `fine` onto the space of degree `degree` on `mesh`
/// (meshes must be nested).
DGFunction project_to(const DGFunction& fine, MeshPtr mesh, int degree);

/// ||a - b||^2 integrated on the finer of the two nested meshes.
double l2_distance_squared_nested(const DGFunction& a, const DGFunction& b);

/// Runs every level (in parallel, capped by HYPEREST_THREADS). A failing
/// level is recorded and the remaining levels continue.
RunReport run_study(const RunConfig& cfg);

/// Single level of a study; `reference` holds the reference per checkpoint, if any.
LevelResult run_level(const RunConfig& cfg, int level, const std::vector<DGFunction>* reference);

// Scalar ODE studies.

struct OdeProblem {
  std::string name;
  Rhs f;
  SecondDerivative f2;
  Vector u0;
  double t_end = 1.0;
  /// Exact solution; empty means a fine RK4 reference is used.
  std::function<Vector(double)> exact;
  /// 0 selects the sampled estimate.
  double lipschitz = 0.0;
};

/// "linear_decay": u' = -u, u0 = 1.  "cubic_forced": u' = -u^3 + sin t, u0 = 1.
OdeProblem ode_problem(const std::string& id);

struct OdeLevel {
  double tau = 0.0;
  ResidualNorms residual;
  double error_linf = 0.0;
  double error_l2 = 0.0;
  OdeBoundReport bound;
};

struct OdeStudy {
  std::vector<OdeLevel> levels;
  std::vector<double> eoc_residual_linf;
  std::vector<double> eoc_error_linf;
};

OdeStudy run_ode_study(const OdeProblem& problem, StepperFamily stepper, const ReconSpec& spec, double tau0,
                       int levels);

}  // namespace hyperest
