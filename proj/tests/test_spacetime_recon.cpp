#include <doctest.h>

#include <cmath>
#include <memory>
#include <numbers>

#include "generators.hpp"
#include "hyperest/errors.hpp"
#include "hyperest/spacetime_recon.hpp"
#include "oracles.hpp"

using namespace hyperest;

namespace {

MeshPtr uniform_mesh(double a, double b, int cells) { return std::make_shared<const Mesh1D>(Mesh1D::uniform(a, b, cells)); }

State scalar(double v) { return State::Constant(1, v); }

/// Piecewise-linear-in-time polynomial through coefficient vectors c(t_n) with
/// constant slope `rate` (coefficients per unit time).
std::shared_ptr<const TemporalPoly> linear_in_time(const Vector& c0, const Vector& rate, double tau, int steps) {
  std::vector<double> breaks;
  std::vector<TemporalPoly::Piece> pieces;
  for (int n = 0; n <= steps; ++n) breaks.push_back(n * tau);
  for (int n = 0; n < steps; ++n) {
    TemporalPoly::Piece p;
    p.anchor = n * tau;
    p.scale = tau;
    p.form.nodes = {0.0};
    p.form.coeffs = {Vector(c0 + n * tau * rate), Vector(tau * rate)};
    pieces.push_back(std::move(p));
  }
  return std::make_shared<const TemporalPoly>(std::move(breaks), std::move(pieces));
}

/// Full pipeline on an advection problem with a smooth initial state.
SpaceTimeRecon advection_run(int q, FluxKind kind, int cells, int steps, StepperFamily stepper, ReconSpec spec) {
  auto law = std::make_shared<const LinearAdvection>(1.0);
  auto mesh = uniform_mesh(0.0, 2.0, cells);
  const double tau = 0.2 * mesh->h();
  const FluxSpec flux{kind, tau / mesh->h(), 0.0, 1, kind == FluxKind::llf};
  const DGOperator op(law, flux, mesh, q);
  const Rhs rhs = [&op](double, const Vector& u) { return Vector(-op.apply(u)); };
  const DGFunction u0 = l2_project(mesh, q, 1, [](double x) { return scalar(std::sin(std::numbers::pi * x)); }, q + 3);
  const Trajectory traj = evolve(rhs, u0.coeffs(), TimeGrid{0.0, tau, steps}, stepper);
  auto poly = std::make_shared<const TemporalPoly>(reconstruct(traj, spec, rhs));
  return SpaceTimeRecon(law, flux, mesh, q, poly);
}

}  // namespace

TEST_CASE("constant data reconstructs to the constant") {
  const auto mesh = uniform_mesh(0.0, 1.0, 6);
  Burgers burgers;
  for (int q = 0; q <= 3; ++q) {
    for (FluxKind kind : {FluxKind::central_w, FluxKind::llf, FluxKind::roe_char}) {
      const DGFunction u = l2_project(mesh, q, 1, [](double) { return scalar(0.8); }, q + 2);
      const FluxSpec spec{kind, 0.1, 0.0, 1, false};
      const DGFunction r = spatial_reconstruct(burgers, spec, u);
      CHECK(r.degree() == q + 1);
      for (double x : {0.0, 0.1, 0.49, 0.5, 0.77}) CHECK(r.eval(x)[0] == doctest::Approx(0.8).epsilon(1e-14));
    }
  }
}

TEST_CASE("piecewise constant two-cell data reconstructs to the interface average") {
  const auto mesh = uniform_mesh(0.0, 2.0, 2);
  DGFunction u(mesh, 0, 1);
  u.cell_block(1)(0, 0) = 1.0 * std::sqrt(mesh->width(1));
  const DGFunction r = spatial_reconstruct_from(u, {scalar(0.5), scalar(0.5)});
  for (double x : {0.0, 0.3, 1.0, 1.7}) CHECK(r.eval(x)[0] == doctest::Approx(0.5).epsilon(1e-14));
  // with llf w is the trace average, so the same result
  const DGFunction s = spatial_reconstruct(LinearAdvection(1.0), FluxSpec{FluxKind::llf, 0.5}, u);
  CHECK(s.eval(0.3)[0] == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("reconstruction is continuous, hits w and keeps the low moments") {
  gen::Gen g(71);
  const Euler law;
  const auto mesh = g.mesh(4, 9);
  for (int q : {1, 2, 3}) {
    const DGFunction u = g.euler_dg(mesh, q, law);
    const FluxSpec spec{FluxKind::central_w, 0.05};
    const DGFunction r = spatial_reconstruct(law, spec, u);
    for (int i = 0; i < mesh->cells(); ++i) {
      const double h = mesh->interface_width(i);
      const State w = flux_w(law, spec, u.trace_minus(i), u.trace_plus(i), h);
      CHECK((r.trace_minus(i) - w).norm() < 1e-12);
      CHECK((r.trace_plus(i) - w).norm() < 1e-12);
    }
    for (int c = 0; c < mesh->cells(); ++c) {
      CHECK((r.cell_block(c).topRows(q) - u.cell_block(c).topRows(q)).norm() < 1e-15);
    }
  }
}

TEST_CASE("residual of a steady constant state vanishes") {
  auto law = std::make_shared<const Burgers>();
  auto mesh = uniform_mesh(0.0, 1.0, 5);
  const DGFunction u = l2_project(mesh, 2, 1, [](double) { return scalar(0.6); }, 4);
  const auto poly = linear_in_time(u.coeffs(), Vector::Zero(u.coeffs().size()), 0.05, 4);
  const ResidualField field(SpaceTimeRecon(law, FluxSpec{FluxKind::central_w, 0.2}, mesh, 2, poly));
  for (int n = 0; n < field.slabs(); ++n) {
    CHECK(field.slab_l2_squared(n) < 1e-28);
    CHECK(field.sup_dx(n) < 1e-12);
  }
  CHECK(residual_l2(field, 0.2) < 1e-14);
  CHECK(field.range().lower[0] == doctest::Approx(0.6));
  CHECK(field.range().upper[0] == doctest::Approx(0.6));
}

TEST_CASE("spatially constant linear growth has unit residual") {
  auto law = std::make_shared<const LinearAdvection>(3.0);
  auto mesh = uniform_mesh(-1.0, 2.0, 6);
  const DGFunction c = l2_project(mesh, 1, 1, [](double) { return scalar(0.2); }, 3);
  const DGFunction one = l2_project(mesh, 1, 1, [](double) { return scalar(1.0); }, 3);
  const auto poly = linear_in_time(c.coeffs(), one.coeffs(), 0.1, 5);
  const ResidualField field(SpaceTimeRecon(law, FluxSpec{FluxKind::central_w, 0.3}, mesh, 1, poly));
  CHECK(residual_l2(field, 0.5) == doctest::Approx(std::sqrt(3.0 * 0.5)).epsilon(1e-12));
  CHECK(residual_l2(field, 0.2) == doctest::Approx(std::sqrt(3.0 * 0.2)).epsilon(1e-12));
  CHECK_THROWS_AS(residual_l2(field, 0.25), DomainError);
  const auto s = field.split(0.37, 0.4);
  CHECK(s.rst[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s.rt[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(s.rs[0]) < 1e-12);
}

TEST_CASE("residual of a frozen continuous hat is the advection of its slope") {
  auto law = std::make_shared<const LinearAdvection>(8.0);
  auto mesh = uniform_mesh(0.0, 2.0, 4);
  auto hat = [](double x) { return scalar(x < 0.5 ? 0.0 : x < 1.0 ? 2 * (x - 0.5) : x < 1.5 ? 2 * (1.5 - x) : 0.0); };
  const DGFunction u = l2_project(mesh, 1, 1, hat, 3);
  const auto poly = linear_in_time(u.coeffs(), Vector::Zero(u.coeffs().size()), 0.05, 2);
  const ResidualField field(SpaceTimeRecon(law, FluxSpec{FluxKind::central_w, 0.4}, mesh, 1, poly));
  // ||8 hat'||^2 = 64 * 4 * 1 per unit time
  CHECK(residual_l2(field, 0.1) == doctest::Approx(std::sqrt(0.1 * 64.0 * 4.0)).epsilon(1e-12));
  CHECK(field.sup_dx(0) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(field.evaluate(0.03, 0.7)[0] == doctest::Approx(16.0).epsilon(1e-12));
  CHECK(field.evaluate(0.03, 1.2)[0] == doctest::Approx(-16.0).epsilon(1e-12));
}

TEST_CASE("slab norms agree with an independent quadrature of the residual") {
  const SpaceTimeRecon st = advection_run(2, FluxKind::central_w, 8, 6, StepperFamily::rk3_ssp, ReconSpec{0, 0, 0});
  const ResidualField field(st);
  const double t0 = st.temporal().breakpoints()[2], t1 = st.temporal().breakpoints()[3];
  // the residual is only piecewise smooth in x: integrate cell by cell
  const auto cellwise = [&](oracle::Real t) {
    oracle::Real s = 0;
    for (int c = 0; c < 8; ++c) {
      s += oracle::simpson([&](oracle::Real x) {
        const double r = field.evaluate(double(t), double(x))[0];
        return oracle::Real(r) * r;
      }, 0.25L * c + 1e-13L, 0.25L * (c + 1) - 1e-13L, 40);
    }
    return s;
  };
  const double expected = double(oracle::simpson(cellwise, oracle::Real(t0) + 1e-13L, oracle::Real(t1) - 1e-13L, 20));
  CHECK(field.slab_l2_squared(2) == doctest::Approx(expected).epsilon(1e-7));
}

TEST_CASE("residual splits into temporal and spatial parts") {
  const SpaceTimeRecon st = advection_run(2, FluxKind::richtmyer_visc, 6, 5, StepperFamily::rk3_ssp, ReconSpec{0, 0, 0});
  const ResidualField field(st);
  gen::Gen g(5);
  for (int k = 0; k < 50; ++k) {
    const double t = g.uniform(0.0, st.temporal().end());
    const double x = g.uniform(0.0, 2.0);
    const auto s = field.split(t, x);
    CHECK((s.rst - s.rs - s.rt).norm() <= 1e-10 * (1.0 + s.rst.norm()));
    CHECK((s.rst - field.evaluate(t, x)).norm() <= 1e-14 * (1.0 + s.rst.norm()));
  }
}

TEST_CASE("reconstruction-compatible projection interpolates the initial state") {
  const LinearAdvection law(1.0);
  auto mesh = uniform_mesh(0.0, 2.0, 8);
  const auto u0 = [](double x) { return scalar(1.0 - 0.5 * std::cos(std::numbers::pi * x)); };
  for (int q : {1, 2, 3}) {
    for (FluxKind kind : {FluxKind::central_w, FluxKind::richtmyer_visc, FluxKind::roe_char}) {
      const FluxSpec spec{kind, 0.1, 0.5};
      REQUIRE(reconstruction_projection_supported(spec));
      const DGFunction uh = reconstruction_projection(law, spec, mesh, q, u0, q + 3);
      const DGFunction l2 = l2_project(mesh, q, 1, u0, q + 3);
      const DGFunction r = spatial_reconstruct(law, spec, uh);
      for (int i = 0; i < mesh->cells(); ++i) {
        CHECK(r.trace_plus(i)[0] == doctest::Approx(u0(mesh->interface_x(i))[0]).epsilon(1e-11));
      }
      for (int c = 0; c < mesh->cells(); ++c) {
        CHECK((uh.cell_block(c).topRows(q) - l2.cell_block(c).topRows(q)).norm() < 1e-15);
      }
    }
  }
  CHECK_FALSE(reconstruction_projection_supported(FluxSpec{FluxKind::llf}));
  CHECK_FALSE(reconstruction_projection_supported(FluxSpec{FluxKind::roe_avg}));
  CHECK_THROWS_AS(reconstruction_projection(law, FluxSpec{FluxKind::llf}, mesh, 2, u0, 5), UnsupportedError);
}

TEST_CASE("sampled state range records extremes and locations") {
  StateRange r;
  CHECK(r.empty());
  r.include(scalar(1.0), 0.1, 0.2);
  r.include(scalar(-2.0), 0.3, 0.4);
  r.include(scalar(5.0), 0.5, 0.6);
  CHECK(r.lower[0] == -2.0);
  CHECK(r.upper[0] == 5.0);
  CHECK(r.lower_t[0] == 0.3);
  CHECK(r.upper_x[0] == 0.6);
  StateRange other;
  other.include(scalar(7.0), 0.9, 1.0);
  r.merge(other);
  CHECK(r.upper[0] == 7.0);
  CHECK(r.upper_t[0] == 0.9);
  CHECK(r.lower[0] == -2.0);
}

TEST_CASE("residual sampling reports inadmissible states") {
  auto law = std::make_shared<const Euler>();
  auto mesh = uniform_mesh(0.0, 1.0, 4);
  const DGFunction u = l2_project(mesh, 1, 3, [&](double x) { return law->from_primitive(1.0, 0.0, x < 0.5 ? 1.0 : -1.0); }, 3);
  const auto poly = linear_in_time(u.coeffs(), Vector::Zero(u.coeffs().size()), 0.1, 1);
  CHECK_THROWS_AS(ResidualField(SpaceTimeRecon(law, FluxSpec{FluxKind::central_w, 0.1}, mesh, 1, poly)),
                  StateSpaceError);
}
