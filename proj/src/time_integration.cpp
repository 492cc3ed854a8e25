#include "hyperest/time_integration.hpp"

#include "hyperest/errors.hpp"

namespace hyperest {

std::string to_string(StepperFamily family) {
  switch (family) {
    case StepperFamily::rk1: return "rk1";
    case StepperFamily::rk2_heun: return "rk2_heun";
    case StepperFamily::rk3_ssp: return "rk3_ssp";
    case StepperFamily::rk4_classic: return "rk4_classic";
    case StepperFamily::ab2: return "ab2";
    case StepperFamily::ab3: return "ab3";
  }
  return "unknown";
}

StepperFamily parse_stepper(const std::string& name) {
  for (auto f : {StepperFamily::rk1, StepperFamily::rk2_heun, StepperFamily::rk3_ssp, StepperFamily::rk4_classic,
                 StepperFamily::ab2, StepperFamily::ab3}) {
    if (to_string(f) == name) return f;
  }
  if (name == "rk4") return StepperFamily::rk4_classic;
  if (name == "rk3") return StepperFamily::rk3_ssp;
  if (name == "rk2") return StepperFamily::rk2_heun;
  throw ConfigError("unknown stepper '" + name + "'");
}

int order_of(StepperFamily family) {
  switch (family) {
    case StepperFamily::rk1: return 1;
    case StepperFamily::rk2_heun: return 2;
    case StepperFamily::rk3_ssp: return 3;
    case StepperFamily::rk4_classic: return 4;
    case StepperFamily::ab2: return 2;
    case StepperFamily::ab3: return 3;
  }
  return 0;
}

StepperFamily rk_of_order(int order) {
  switch (order) {
    case 1: return StepperFamily::rk1;
    case 2: return StepperFamily::rk2_heun;
    case 3: return StepperFamily::rk3_ssp;
    case 4: return StepperFamily::rk4_classic;
    default: throw UnsupportedError("no explicit RK method of order " + std::to_string(order));
  }
}

namespace {

template <typename Fn>
Vector stage(int index, Fn&& fn) {
  try {
    return fn();
  } catch (const StateSpaceError& e) {
    throw StateSpaceError(std::string(e.what()) + " [stage " + std::to_string(index) + "]", e.x(), e.t());
  }
}

}  // namespace

Vector rk_step(const Rhs& f, double t, const Vector& u, double tau, StepperFamily family, const Vector* f_start) {
  if (!(tau > 0.0)) throw DomainError("rk_step: time step must be positive");
  const Vector k1 = f_start ? *f_start : stage(1, [&] { return f(t, u); });
  switch (family) {
    case StepperFamily::rk1:
      return u + tau * k1;
    case StepperFamily::rk2_heun: {
      const Vector k2 = stage(2, [&] { return f(t + tau, u + tau * k1); });
      return u + 0.5 * tau * (k1 + k2);
    }
    case StepperFamily::rk3_ssp: {
      const Vector u1 = u + tau * k1;
      const Vector u2 = 0.75 * u + 0.25 * (u1 + tau * stage(2, [&] { return f(t + tau, u1); }));
      return u / 3.0 + (2.0 / 3.0) * (u2 + tau * stage(3, [&] { return f(t + 0.5 * tau, u2); }));
    }
    case StepperFamily::rk4_classic: {
      const Vector k2 = stage(2, [&] { return f(t + 0.5 * tau, u + 0.5 * tau * k1); });
      const Vector k3 = stage(3, [&] { return f(t + 0.5 * tau, u + 0.5 * tau * k2); });
      const Vector k4 = stage(4, [&] { return f(t + tau, u + tau * k3); });
      return u + (tau / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    case StepperFamily::ab2:
    case StepperFamily::ab3:
      throw UnsupportedError("rk_step: multi-step family " + to_string(family));
  }
  return u;
}

Trajectory evolve(const Rhs& f, const Vector& u0, const TimeGrid& grid, StepperFamily family) {
  if (grid.steps < 0) throw DomainError("evolve: negative step count");
  Trajectory traj;
  traj.order = order_of(family);
  traj.times.reserve(grid.steps + 1);
  traj.states.reserve(grid.steps + 1);
  traj.f_values.reserve(grid.steps + 1);
  traj.times.push_back(grid.t0);
  traj.states.push_back(u0);
  traj.f_values.push_back(f(grid.t0, u0));

  const bool multistep = family == StepperFamily::ab2 || family == StepperFamily::ab3;
  const StepperFamily starter = multistep ? rk_of_order(order_of(family)) : family;
  const int startup_steps = multistep ? order_of(family) - 1 : grid.steps;

  for (int n = 0; n < grid.steps; ++n) {
    const double t = grid.time(n);
    const Vector& u = traj.states[n];
    Vector next;
    try {
      if (n < startup_steps) {
        next = rk_step(f, t, u, grid.tau, starter, &traj.f_values[n]);
      } else if (family == StepperFamily::ab2) {
        next = u + grid.tau * (1.5 * traj.f_values[n] - 0.5 * traj.f_values[n - 1]);
      } else {
        next = u + grid.tau * ((23.0 / 12.0) * traj.f_values[n] - (16.0 / 12.0) * traj.f_values[n - 1] +
                               (5.0 / 12.0) * traj.f_values[n - 2]);
      }
      traj.f_values.push_back(f(grid.time(n + 1), next));
    } catch (const StateSpaceError& e) {
      throw StateSpaceError(std::string(e.what()) + " [step " + std::to_string(n) + "]", e.x(), t);
    }
    traj.times.push_back(grid.time(n + 1));
    traj.states.push_back(std::move(next));
  }
  return traj;
}

}  // namespace hyperest
