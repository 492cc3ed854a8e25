#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hyperest/types.hpp"

namespace hyperest {

/// Right-hand side of u' = F(t, u).
using Rhs = std::function<Vector(double, const Vector&)>;

enum class StepperFamily { rk1, rk2_heun, rk3_ssp, rk4_classic, ab2, ab3 };

std::string to_string(StepperFamily family);
StepperFamily parse_stepper(const std::string& name);
int order_of(StepperFamily family);
/// Explicit RK family of the given order (1..4).
StepperFamily rk_of_order(int order);

/// Equidistant grid t_n = t0 + n tau, n = 0..steps.
struct TimeGrid {
  double t0 = 0.0;
  double tau = 0.0;
  int steps = 0;

  double time(int n) const { return t0 + n * tau; }
  double end() const { return time(steps); }
};

/// Nodal output of a time integrator, with F(t_n, u^n) cached per node.
struct Trajectory {
  std::vector<double> times;
  std::vector<Vector> states;
  std::vector<Vector> f_values;
  int order = 0;

  int steps() const { return static_cast<int>(times.size()) - 1; }
  double tau() const { return times.size() > 1 ? times[1] - times[0] : 0.0; }
};

/// One explicit Runge-Kutta step. `f_start`, when given, is F(t, u).
Vector rk_step(const Rhs& f, double t, const Vector& u, double tau, StepperFamily family,
               const Vector* f_start = nullptr);

/// Integrates over `grid`. Multi-step families start with RK of equal order.
Trajectory evolve(const Rhs& f, const Vector& u0, const TimeGrid& grid, StepperFamily family);

}  // namespace hyperest
