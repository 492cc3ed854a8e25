#include <doctest.h>

#include <cmath>
#include <memory>

#include "hyperest/dg_operator.hpp"
#include "hyperest/errors.hpp"
#include "hyperest/time_integration.hpp"

using namespace hyperest;

namespace {

const StepperFamily kRk[] = {StepperFamily::rk1, StepperFamily::rk2_heun, StepperFamily::rk3_ssp,
                             StepperFamily::rk4_classic};
const StepperFamily kAll[] = {StepperFamily::rk1,         StepperFamily::rk2_heun, StepperFamily::rk3_ssp,
                              StepperFamily::rk4_classic, StepperFamily::ab2,      StepperFamily::ab3};

Vector scalar(double v) { return Vector::Constant(1, v); }

}  // namespace

TEST_CASE("zero right-hand side leaves the state unchanged") {
  const Rhs zero = [](double, const Vector& u) { return Vector(Vector::Zero(u.size())); };
  const Vector u = Vector::LinSpaced(4, -1.0, 2.0);
  for (StepperFamily family : kRk) CHECK(rk_step(zero, 0.3, u, 0.1, family) == u);
  for (StepperFamily family : kAll) {
    const Trajectory traj = evolve(zero, u, TimeGrid{0.0, 0.1, 5}, family);
    CHECK(traj.states.back() == u);
  }
}

TEST_CASE("RK4 on u' = u equals the degree-4 Taylor polynomial") {
  const Rhs f = [](double, const Vector& u) { return Vector(u); };
  const double expected = 1.0 + 0.1 + 0.005 + 1e-3 / 6.0 + 1e-4 / 24.0;
  CHECK(rk_step(f, 0.0, scalar(1.0), 0.1, StepperFamily::rk4_classic)[0] == doctest::Approx(expected).epsilon(1e-15));
}

TEST_CASE("constant right-hand side is integrated exactly") {
  const Rhs one = [](double, const Vector& u) { return Vector(Vector::Ones(u.size())); };
  for (StepperFamily family : kRk) CHECK(rk_step(one, 0.0, scalar(2.0), 0.25, family)[0] == doctest::Approx(2.25).epsilon(1e-15));
  for (StepperFamily family : kAll) {
    const Trajectory traj = evolve(one, scalar(2.0), TimeGrid{0.0, 0.25, 8}, family);
    CHECK(traj.states.back()[0] == doctest::Approx(4.0).epsilon(1e-14));
  }
}

TEST_CASE("empty grid keeps only the initial node") {
  const Rhs f = [](double t, const Vector& u) { return Vector(-u * t); };
  const Trajectory traj = evolve(f, scalar(1.0), TimeGrid{0.5, 0.1, 0}, StepperFamily::rk3_ssp);
  REQUIRE(traj.times.size() == 1);
  CHECK(traj.times[0] == 0.5);
  CHECK(traj.states[0][0] == 1.0);
  CHECK(traj.f_values[0][0] == doctest::Approx(-0.5));
}

TEST_CASE("RK4 decay over [0,1]") {
  const Rhs f = [](double, const Vector& u) { return Vector(-u); };
  const Trajectory traj = evolve(f, scalar(1.0), TimeGrid{0.0, 0.1, 10}, StepperFamily::rk4_classic);
  // one RK4 step on a linear problem multiplies by the degree-4 Taylor polynomial
  const long double step = 1.0L - 0.1L + 0.005L - 0.001L / 6 + 0.0001L / 24;
  CHECK(traj.states.back()[0] == doctest::Approx(double(std::pow(step, 10))).epsilon(1e-14));
  CHECK(std::abs(traj.states.back()[0] - std::exp(-1.0)) < 3.5e-7);
  CHECK(traj.order == 4);
}

TEST_CASE("cached f values equal fresh evaluations") {
  const Rhs f = [](double t, const Vector& u) { return Vector(-u.array().cube().matrix() + Vector::Constant(u.size(), std::sin(t))); };
  for (StepperFamily family : kAll) {
    const Trajectory traj = evolve(f, scalar(1.0), TimeGrid{0.0, 0.05, 20}, family);
    for (int n = 0; n <= traj.steps(); ++n) CHECK((traj.f_values[n] - f(traj.times[n], traj.states[n])).norm() == 0.0);
  }
}

TEST_CASE("one DG step through evolve equals rk_step") {
  auto mesh = std::make_shared<const Mesh1D>(Mesh1D::uniform(0.0, 2.0, 8));
  const auto law = std::make_shared<LinearAdvection>(8.0);
  const DGOperator op(law, FluxSpec{FluxKind::richtmyer_visc, 0.016, 0.5, 1}, mesh, 2);
  const Rhs rhs = [&op](double, const Vector& u) { return Vector(-op.apply(u)); };
  const Vector u0 = l2_project(mesh, 2, 1, [](double x) { return State::Constant(1, std::sin(x)); }, 5).coeffs();
  const Trajectory traj = evolve(rhs, u0, TimeGrid{0.0, 0.002, 1}, StepperFamily::rk3_ssp);
  CHECK((traj.states[1] - rk_step(rhs, 0.0, u0, 0.002, StepperFamily::rk3_ssp)).norm() == 0.0);
}

TEST_CASE("declared orders are observed on u' = -u") {
  const Rhs f = [](double, const Vector& u) { return Vector(-u); };
  for (StepperFamily family : kAll) {
    double prev = 0;
    double rate = 0;
    for (int k = 0; k <= 5; ++k) {
      const int steps = 10 << k;
      const Trajectory traj = evolve(f, scalar(1.0), TimeGrid{0.0, 1.0 / steps, steps}, family);
      const double err = std::abs(traj.states.back()[0] - std::exp(-1.0));
      if (k > 0) rate = std::log2(prev / err);
      prev = err;
    }
    INFO(to_string(family));
    CHECK(std::abs(rate - order_of(family)) <= 0.2);
  }
}

TEST_CASE("evolve is bit-reproducible") {
  const Rhs f = [](double t, const Vector& u) { return Vector(-u.array().cube().matrix() + Vector::Constant(u.size(), std::sin(t))); };
  const Vector u0 = Vector::LinSpaced(5, 0.1, 1.3);
  for (StepperFamily family : kAll) {
    const Trajectory a = evolve(f, u0, TimeGrid{0.0, 0.01, 50}, family);
    const Trajectory b = evolve(f, u0, TimeGrid{0.0, 0.01, 50}, family);
    for (int n = 0; n <= 50; ++n) CHECK(a.states[n] == b.states[n]);
  }
}

TEST_CASE("stepper names and errors") {
  for (StepperFamily family : kAll) CHECK(parse_stepper(to_string(family)) == family);
  CHECK_THROWS_AS(parse_stepper("rk9"), ConfigError);
  const Rhs f = [](double, const Vector& u) { return Vector(u); };
  CHECK_THROWS_AS(rk_step(f, 0.0, scalar(1.0), 0.0, StepperFamily::rk4_classic), DomainError);
  CHECK_THROWS_AS(rk_step(f, 0.0, scalar(1.0), 0.1, StepperFamily::ab2), UnsupportedError);
  CHECK(rk_of_order(3) == StepperFamily::rk3_ssp);
}

TEST_CASE("stage failures report the stage and step") {
  const Rhs f = [](double t, const Vector& u) -> Vector {
    if (t > 0.25) throw StateSpaceError("boom", 0.5, t);
    return Vector(-u);
  };
  try {
    evolve(f, scalar(1.0), TimeGrid{0.0, 0.1, 5}, StepperFamily::rk4_classic);
    FAIL("expected failure");
  } catch (const StateSpaceError& e) {
    const std::string what = e.what();
    CHECK(what.find("[stage") != std::string::npos);
    CHECK(what.find("[step ") != std::string::npos);
  }
}
