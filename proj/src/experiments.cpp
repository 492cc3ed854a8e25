#include "hyperest/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <thread>

#include "hyperest/dg_operator.hpp"
#include "hyperest/errors.hpp"
#include "hyperest/quadrature.hpp"

namespace hyperest {

std::string to_string(Problem problem) {
  switch (problem) {
    case Problem::advection: return "advection";
    case Problem::burgers: return "burgers";
    case Problem::euler: return "euler";
  }
  return "unknown";
}

Problem parse_problem(const std::string& name) {
  for (auto p : {Problem::advection, Problem::burgers, Problem::euler}) {
    if (to_string(p) == name) return p;
  }
  throw ConfigError("unknown problem '" + name + "'");
}

std::string to_string(InitialProjection mode) {
  switch (mode) {
    case InitialProjection::automatic: return "auto";
    case InitialProjection::l2: return "l2";
    case InitialProjection::reconstruction: return "reconstruction";
  }
  return "unknown";
}

InitialProjection parse_initial_projection(const std::string& name) {
  for (auto m : {InitialProjection::automatic, InitialProjection::l2, InitialProjection::reconstruction}) {
    if (to_string(m) == name) return m;
  }
  throw ConfigError("unknown initial projection '" + name + "'");
}

namespace {

bool is_multiple(double value, double unit) {
  const double r = value / unit;
  return std::abs(r - std::round(r)) <= 1e-9 * std::max(1.0, std::abs(r));
}

}  // namespace

int RunConfig::cells(int level) const {
  return static_cast<int>(std::lround((domain_right - domain_left) / h0)) << level;
}
double RunConfig::h(int level) const { return (domain_right - domain_left) / cells(level); }
double RunConfig::tau(int level) const { return tau0 / static_cast<double>(1 << level); }
int RunConfig::steps(int level) const { return static_cast<int>(std::lround(t_end / tau0)) << level; }

void RunConfig::validate() const {
  if (!(h0 > 0) || !(tau0 > 0) || !(t_end > 0)) throw ConfigError("h0, tau0 and t_end must be positive");
  if (tau0 / h0 > cfl_cap * (1 + 1e-12)) {
    throw ConfigError("CFL guard: tau0/h0 = " + std::to_string(tau0 / h0) + " exceeds the cap " +
                      std::to_string(cfl_cap));
  }
  if (levels < 1 || levels > 10) throw ConfigError("levels must be in 1..10");
  if (q < 0 || q > 8) throw ConfigError("q must be in 0..8");
  if (!(domain_right > domain_left)) throw ConfigError("empty domain");
  if (!is_multiple(domain_right - domain_left, h0)) throw ConfigError("h0 does not divide the domain");
  if (!is_multiple(t_end, tau0)) throw ConfigError("tau0 does not divide t_end");
  for (double t : checkpoints) {
    if (t < 0 || t > t_end * (1 + 1e-12) || !is_multiple(t, tau0)) {
      throw ConfigError("checkpoint " + std::to_string(t) + " is not a coarse time node in [0, t_end]");
    }
  }
  if (checkpoints.empty()) throw ConfigError("at least one checkpoint required");
  try {
    recon.validate();
  } catch (const UnsupportedError& e) {
    throw ConfigError(e.what());
  }
  if (recon.needs_second_derivative() && recon.mode == DerivativeMode::exact_callable) {
    throw ConfigError("DG runs approximate second derivatives (directional or backward_fd)");
  }
  if (recon.mode == DerivativeMode::backward_fd && recon.needs_second_derivative() && steps(0) < 7) {
    throw ConfigError("backward_fd start-up needs at least 7 steps on the coarsest level");
  }
  if (steps(0) < recon.p + 1) throw ConfigError("too few time steps for the reconstruction");
  const bool system = problem == Problem::euler;
  if (system && initial != "pressure_wave" && initial != "constant") {
    throw ConfigError("euler initial condition must be pressure_wave or constant");
  }
  if (!system && initial != "cosine" && initial != "sine" && initial != "constant") {
    throw ConfigError("scalar initial condition must be cosine, sine or constant");
  }
  if (reference_factor < 1 || reference_tau_factor < 1) throw ConfigError("reference factors must be >= 1");
  if (entropy_resolution < 2) throw ConfigError("entropy_resolution must be >= 2");
  if (safety < 1.0) throw ConfigError("safety factor must be >= 1");
}

void apply_default_pairing(RunConfig& cfg) {
  const DerivativeMode mode = cfg.recon.mode;
  switch (cfg.q) {
    case 0: cfg.stepper = StepperFamily::rk1; cfg.recon = {0, 0, -1}; break;
    case 1: cfg.stepper = StepperFamily::rk2_heun; cfg.recon = {0, 0, -1}; break;
    case 2: cfg.stepper = StepperFamily::rk3_ssp; cfg.recon = {0, 0, 0}; break;
    default: cfg.stepper = StepperFamily::rk4_classic; cfg.recon = {1, 0, 0}; break;
  }
  cfg.recon.mode = mode;
}

RunConfig advection_config(int q) {
  RunConfig cfg;
  cfg.q = q;
  apply_default_pairing(cfg);
  return cfg;
}

RunConfig euler_config(int q) {
  RunConfig cfg;
  cfg.problem = Problem::euler;
  cfg.initial = "pressure_wave";
  cfg.t_end = 1.0;
  cfg.tau0 = 0.008;
  cfg.flux.mu = 0.0;
  cfg.checkpoints = {0.6, 0.8, 1.0};
  cfg.q = q;
  apply_default_pairing(cfg);
  return cfg;
}

RunConfig burgers_config(int q) {
  RunConfig cfg;
  cfg.problem = Problem::burgers;
  cfg.initial = "sine";
  cfg.t_end = 0.5;
  cfg.tau0 = 0.005;
  cfg.levels = 4;
  cfg.flux = FluxSpec{FluxKind::llf, 0.0, 0.0, 0};
  cfg.flux.local_speed = true;
  cfg.checkpoints = {0.25, 0.5};
  cfg.q = q;
  apply_default_pairing(cfg);
  return cfg;
}

LawPtr make_law(const RunConfig& cfg) {
  switch (cfg.problem) {
    case Problem::advection: return std::make_shared<LinearAdvection>(cfg.speed);
    case Problem::burgers: return std::make_shared<Burgers>();
    case Problem::euler: return std::make_shared<Euler>(cfg.gamma);
  }
  throw ConfigError("unknown problem");
}

namespace {

std::function<double(double)> scalar_initial(const RunConfig& cfg) {
  using std::numbers::pi;
  if (cfg.initial == "cosine") return [](double x) { return 1.0 - 0.5 * std::cos(pi * x); };
  if (cfg.initial == "sine") return [](double x) { return 0.5 + std::sin(pi * x); };
  const double c = cfg.constant_value;
  return [c](double) { return c; };
}

}  // namespace

StateFunction initial_condition(const RunConfig& cfg) {
  if (cfg.problem == Problem::euler) {
    const Euler law(cfg.gamma);
    if (cfg.initial == "pressure_wave") {
      return [law](double x) { return law.from_primitive(1.0, 1.0, 1.3 + 0.5 * std::sin(std::numbers::pi * x)); };
    }
    return [law](double) { return law.from_primitive(1.0, 1.0, 1.0); };
  }
  auto u0 = scalar_initial(cfg);
  return [u0](double x) { return State::Constant(1, u0(x)); };
}

DGFunction initial_data(const RunConfig& cfg, const ConservationLaw& law, const FluxSpec& flux, MeshPtr mesh,
                        int degree) {
  const StateFunction u0 = initial_condition(cfg);
  bool compatible = cfg.initial_projection == InitialProjection::reconstruction;
  if (cfg.initial_projection == InitialProjection::automatic) {
    compatible = degree >= 1 && reconstruction_projection_supported(flux);
  }
  if (compatible) return reconstruction_projection(law, flux, std::move(mesh), degree, u0, degree + 3);
  return l2_project(std::move(mesh), degree, law.dim(), u0, degree + 3);
}

double exact_advection(const std::function<double(double)>& u0, double speed, double t, double x, double left,
                       double right) {
  const double len = right - left;
  double y = std::fmod(x - speed * t - left, len);
  if (y < 0) y += len;
  return u0(left + y);
}

std::vector<EocRow> eoc(const std::vector<std::pair<double, double>>& values) {
  std::vector<EocRow> rows;
  for (std::size_t k = 0; k < values.size(); ++k) {
    EocRow r{static_cast<int>(k), values[k].first, values[k].second, std::nan("")};
    if (k > 0) {
      const auto [h0, v0] = values[k - 1];
      const auto [h1, v1] = values[k];
      if (v0 > 0 && v1 > 0 && std::isfinite(v0) && std::isfinite(v1) && h0 != h1) {
        r.eoc = std::log(v0 / v1) / std::log(h0 / h1);
      }
    }
    rows.push_back(r);
  }
  return rows;
}

bool RunReport::all_ok() const {
  return std::all_of(levels.begin(), levels.end(), [](const LevelResult& l) { return l.ok; });
}

bool RunReport::any_assumption_violation() const {
  return std::any_of(levels.begin(), levels.end(), [](const LevelResult& l) { return l.assumption_violation; });
}

namespace {

FluxSpec level_flux(const RunConfig& cfg, double h, double tau) {
  FluxSpec flux = cfg.flux;
  if (cfg.lambda_from_grid) flux.lambda = tau / h;
  return flux;
}

}  // namespace

std::vector<DGFunction> euler_reference(const RunConfig& cfg) {
  const int finest = cfg.levels - 1;
  const int cells = cfg.cells(finest) * cfg.reference_factor;
  const int steps = cfg.steps(finest) * cfg.reference_tau_factor;
  const double tau = cfg.tau(finest) / cfg.reference_tau_factor;
  auto mesh = std::make_shared<const Mesh1D>(Mesh1D::uniform(cfg.domain_left, cfg.domain_right, cells));
  const LawPtr law = make_law(cfg);
  const int degree = cfg.q + 1;
  const DGOperator op(law, level_flux(cfg, mesh->h(), tau), mesh, degree);

  const Rhs rhs = [&op](double, const Vector& u) { return Vector(-op.apply(u)); };
  const FluxSpec flux = level_flux(cfg, mesh->h(), tau);
  Vector u = initial_data(cfg, *law, flux, mesh, degree).coeffs();

  std::vector<int> marks;
  for (double t : cfg.checkpoints) marks.push_back(static_cast<int>(std::lround(t / tau)));
  std::vector<DGFunction> out(cfg.checkpoints.size());
  auto record = [&](int n) {
    for (std::size_t i = 0; i < marks.size(); ++i) {
      if (marks[i] == n) out[i] = DGFunction(mesh, degree, law->dim(), u);
    }
  };
  record(0);
  for (int n = 0; n < steps; ++n) {
    u = rk_step(rhs, n * tau, u, tau, StepperFamily::rk4_classic);
    record(n + 1);
  }
  return out;
}

DGFunction project_to(const DGFunction& fine, MeshPtr mesh, int degree) {
  const Mesh1D& fm = fine.mesh();
  DGFunction out(mesh, degree, fine.dim());
  const int npts = std::max(fine.degree(), degree) + 2;
  const auto& rule = cached_gauss_rule(npts);
  double phi[32];
  for (int fc = 0; fc < fm.cells(); ++fc) {
    const double hf = fm.width(fc);
    for (int j = 0; j < rule.size(); ++j) {
      const double x = fm.to_physical(fc, rule.points[j]);
      const int cc = mesh->locate(x);
      basis_values(degree, mesh->to_reference(cc, x), mesh->width(cc), phi);
      const State v = fine.eval_reference(fc, rule.points[j]);
      auto block = out.cell_block(cc);
      for (int c = 0; c < fine.dim(); ++c) {
        for (int k = 0; k <= degree; ++k) block(k, c) += 0.5 * hf * rule.weights[j] * v[c] * phi[k];
      }
    }
  }
  return out;
}

double l2_distance_squared_nested(const DGFunction& a, const DGFunction& b) {
  const DGFunction& fine = a.cells() >= b.cells() ? a : b;
  const DGFunction& coarse = a.cells() >= b.cells() ? b : a;
  const Mesh1D& fm = fine.mesh();
  const Mesh1D& cm = coarse.mesh();
  const auto& rule = cached_gauss_rule(std::max(a.degree(), b.degree()) + 3);
  double acc = 0.0;
  for (int fc = 0; fc < fm.cells(); ++fc) {
    for (int j = 0; j < rule.size(); ++j) {
      const double x = fm.to_physical(fc, rule.points[j]);
      const int cc = cm.locate(x);
      const State d = fine.eval_reference(fc, rule.points[j]) - coarse.eval_reference(cc, cm.to_reference(cc, x));
      acc += 0.5 * fm.width(fc) * rule.weights[j] * d.squaredNorm();
    }
  }
  return acc;
}

LevelResult run_level(const RunConfig& cfg, int level, const std::vector<DGFunction>* reference) {
  LevelResult lv;
  lv.level = level;
  lv.cells = cfg.cells(level);
  lv.h = cfg.h(level);
  lv.tau = cfg.tau(level);
  try {
    const int q = cfg.q;
    auto mesh = std::make_shared<const Mesh1D>(Mesh1D::uniform(cfg.domain_left, cfg.domain_right, lv.cells));
    const LawPtr law = make_law(cfg);
    const int dim = law->dim();
    const FluxSpec flux = level_flux(cfg, lv.h, lv.tau);
    const DGOperator op(law, flux, mesh, q);
    const Rhs rhs = [&op](double, const Vector& u) { return Vector(-op.apply(u)); };
    const StateFunction u0 = initial_condition(cfg);

    const DGFunction u0h = initial_data(cfg, *law, flux, mesh, q);
    const Trajectory traj = evolve(rhs, u0h.coeffs(), TimeGrid{0.0, lv.tau, cfg.steps(level)}, cfg.stepper);
    auto poly = std::make_shared<const TemporalPoly>(reconstruct(traj, cfg.recon, rhs));
    const SpaceTimeRecon st(law, flux, mesh, q, poly);
    const ResidualField field(st, cfg.residual);

    const CompactBox box = cfg.box ? *cfg.box : padded_box(field.range(), cfg.box_padding);
    const BoxCheck check = verify_in_box(field.range(), box);
    lv.in_box = check.ok;
    lv.constants = entropy_constants(*builtin_entropy(*law), *law, box, cfg.entropy_resolution, cfg.safety);
    lv.sup_dx = field.sup_dx();

    EstimatorInputs in;
    in.constants = lv.constants;
    in.times = traj.times;
    in.slab_residual_sq = field.slab_l2_squared();
    in.slab_sup_dx = field.sup_dx();
    in.init_sq = l2_error_squared(st.ust(0.0), u0, q + 4);

    std::vector<double> gaps;
    std::vector<double> errors;
    for (std::size_t i = 0; i < cfg.checkpoints.size(); ++i) {
      const double t = cfg.checkpoints[i];
      const int n = static_cast<int>(std::lround(t / lv.tau));
      const DGFunction uh(mesh, q, dim, traj.states[n]);
      gaps.push_back(l2_distance_squared(st.ust(t), raise_degree(uh, q + 1)));
      double err = std::nan("");
      if (cfg.problem == Problem::advection) {
        auto scalar = scalar_initial(cfg);
        const double a = cfg.speed, left = cfg.domain_left, right = cfg.domain_right;
        err = l2_error_squared(uh, [&](double x) { return State::Constant(1, exact_advection(scalar, a, t, x, left, right)); },
                               q + 4);
      } else if (reference && i < reference->size()) {
        err = l2_distance_squared_nested(uh, (*reference)[i]);
      }
      errors.push_back(err);
    }

    const EstimatorReport rep = error_estimate(in, cfg.checkpoints, gaps, check, cfg.force);
    for (std::size_t i = 0; i < rep.rows.size(); ++i) {
      const CheckpointEstimate& r = rep.rows[i];
      lv.checkpoints.push_back({r.t, errors[i], r.recon_gap_sq, r.residual_sq, r.exp_factor, r.bound});
    }
    const CheckpointResult& last = lv.checkpoints.back();
    lv.error_l2 = std::sqrt(last.error_sq);
    lv.residual_l2 = std::sqrt(last.residual_sq);
    lv.recon_gap = std::sqrt(last.recon_gap_sq);
    lv.estimator_bound = last.bound;
    lv.ok = true;
  } catch (const AssumptionViolation& e) {
    lv.assumption_violation = true;
    lv.error = e.what();
  } catch (const std::exception& e) {
    lv.error = e.what();
  }
  return lv;
}

namespace {

int worker_count(int tasks) {
  int n = static_cast<int>(std::thread::hardware_concurrency());
  if (const char* env = std::getenv("HYPEREST_THREADS")) {
    const int cap = std::atoi(env);
    if (cap > 0) n = cap;
  }
  return std::clamp(n, 1, std::max(tasks, 1));
}

}  // namespace

RunReport run_study(const RunConfig& cfg) {
  cfg.validate();
  RunReport report;
  report.config = cfg;
  report.levels.resize(cfg.levels);

  std::vector<DGFunction> reference;
  const std::vector<DGFunction>* ref_ptr = nullptr;
  if (cfg.problem == Problem::euler) {
    try {
      reference = euler_reference(cfg);
      ref_ptr = &reference;
    } catch (const std::exception&) {
      ref_ptr = nullptr;
    }
  }

  // Finest level first: it dominates the cost.
  std::atomic<int> next{0};
  auto work = [&] {
    for (int i = next++; i < cfg.levels; i = next++) {
      const int level = cfg.levels - 1 - i;
      report.levels[level] = run_level(cfg, level, ref_ptr);
    }
  };
  const int workers = worker_count(cfg.levels);
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  std::vector<std::pair<double, double>> err, res;
  for (const LevelResult& lv : report.levels) {
    err.emplace_back(lv.h, lv.ok ? lv.error_l2 : std::nan(""));
    res.emplace_back(lv.h, lv.ok ? lv.residual_l2 : std::nan(""));
  }
  for (const EocRow& r : eoc(err)) report.eoc_error.push_back(r.eoc);
  for (const EocRow& r : eoc(res)) report.eoc_residual.push_back(r.eoc);
  return report;
}

OdeProblem ode_problem(const std::string& id) {
  OdeProblem p;
  p.name = id;
  p.u0 = Vector::Constant(1, 1.0);
  p.t_end = 1.0;
  if (id == "linear_decay") {
    p.f = [](double, const Vector& u) { return Vector(-u); };
    p.f2 = [](double, const Vector& u) { return u; };
    p.exact = [](double t) { return Vector::Constant(1, std::exp(-t)); };
    p.lipschitz = 1.0;
    return p;
  }
  if (id == "cubic_forced") {
    p.f = [](double t, const Vector& u) { return Vector(-u.array().cube() + std::sin(t)); };
    p.f2 = [](double t, const Vector& u) {
      const Vector f = -u.array().cube() + std::sin(t);
      return Vector(-3.0 * u.array().square() * f.array() + std::cos(t));
    };
    return p;
  }
  throw ConfigError("unknown ODE problem '" + id + "'");
}

OdeStudy run_ode_study(const OdeProblem& problem, StepperFamily stepper, const ReconSpec& spec, double tau0,
                       int levels) {
  std::function<Vector(double)> exact = problem.exact;
  std::shared_ptr<TemporalPoly> fine;
  if (!exact) {
    const int steps = 20000;
    const Trajectory ref = evolve(problem.f, problem.u0, TimeGrid{0.0, problem.t_end / steps, steps},
                                  StepperFamily::rk4_classic);
    fine = std::make_shared<TemporalPoly>(reconstruct(ref, ReconSpec{0, 0, 0}, problem.f));
    exact = [fine](double t) { return fine->value(t); };
  }

  OdeStudy study;
  for (int k = 0; k < levels; ++k) {
    OdeLevel lv;
    const int steps = static_cast<int>(std::lround(problem.t_end / tau0)) << k;
    lv.tau = problem.t_end / steps;
    const Trajectory traj = evolve(problem.f, problem.u0, TimeGrid{0.0, lv.tau, steps}, stepper);
    const TemporalPoly recon = reconstruct(traj, spec, problem.f, problem.f2);
    lv.residual = residual_norms(recon, problem.f, ResidualSign::ode);

    const auto& rule = cached_gauss_rule(recon.degree() + 2);
    double l2sq = 0.0;
    for (int n = 0; n < recon.intervals(); ++n) {
      const double a = recon.breakpoints()[n], b = recon.breakpoints()[n + 1];
      for (int i = 0; i < rule.size(); ++i) {
        const double t = a + 0.5 * (b - a) * (rule.points[i] + 1.0);
        const double e = (recon.eval_on(n, t).first - exact(t)).norm();
        l2sq += 0.5 * (b - a) * rule.weights[i] * e * e;
        lv.error_linf = std::max(lv.error_linf, e);
      }
      for (int i = 0; i <= 16; ++i) {
        const double t = a + (b - a) * i / 16.0;
        lv.error_linf = std::max(lv.error_linf, (recon.eval_on(n, t).first - exact(t)).norm());
      }
    }
    lv.error_l2 = std::sqrt(l2sq);
    const double lip = problem.lipschitz > 0 ? problem.lipschitz : sampled_lipschitz(problem.f, traj);
    const double e0 = (problem.u0 - recon.value(0.0)).norm();
    lv.bound = ode_error_bound(lv.residual.l1, lv.residual.l2, lip, problem.t_end, e0);
    study.levels.push_back(lv);
  }
  std::vector<std::pair<double, double>> res, err;
  for (const OdeLevel& lv : study.levels) {
    res.emplace_back(lv.tau, lv.residual.linf);
    err.emplace_back(lv.tau, lv.error_linf);
  }
  for (const EocRow& r : eoc(res)) study.eoc_residual_linf.push_back(r.eoc);
  for (const EocRow& r : eoc(err)) study.eoc_error_linf.push_back(r.eoc);
  return study;
}

}  // namespace hyperest
