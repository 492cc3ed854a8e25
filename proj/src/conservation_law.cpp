#include "hyperest/conservation_law.hpp"

#include <cmath>

namespace hyperest {

StateMatrix ConservationLaw::flux_hessian(const State& u, int component) const {
  const int m = dim();
  StateMatrix hess(m, m);
  for (int j = 0; j < m; ++j) {
    const double step = 1e-5 * std::max(1.0, std::abs(u[j]));
    State up = u, um = u;
    up[j] += step;
    um[j] -= step;
    hess.col(j) = (jacobian(up).row(component) - jacobian(um).row(component)).transpose() / (2.0 * step);
  }
  return 0.5 * (hess + hess.transpose());
}

double ConservationLaw::max_speed(const State& u) const {
  return eigensystem(u).values.cwiseAbs().maxCoeff();
}

StateMatrix LinearAdvection::jacobian(const State& /*u*/) const {
  return StateMatrix::Constant(1, 1, speed_);
}

EigenSystem LinearAdvection::eigensystem(const State& /*u*/) const {
  return {StateMatrix::Identity(1, 1), StateMatrix::Identity(1, 1), State::Constant(1, speed_)};
}

StateMatrix LinearAdvection::flux_hessian(const State& /*u*/, int /*component*/) const {
  return StateMatrix::Zero(1, 1);
}

StateMatrix Burgers::jacobian(const State& u) const { return StateMatrix::Constant(1, 1, u[0]); }

EigenSystem Burgers::eigensystem(const State& u) const {
  return {StateMatrix::Identity(1, 1), StateMatrix::Identity(1, 1), State::Constant(1, u[0])};
}

StateMatrix Burgers::flux_hessian(const State& /*u*/, int /*component*/) const {
  return StateMatrix::Constant(1, 1, 1.0);
}

double Euler::pressure(const State& u) const {
  return (gamma_ - 1.0) * (u[2] - 0.5 * u[1] * u[1] / u[0]);
}

double Euler::sound_speed(const State& u) const { return std::sqrt(gamma_ * pressure(u) / u[0]); }

State Euler::from_primitive(double rho, double velocity, double p) const {
  State u(3);
  u << rho, rho * velocity, p / (gamma_ - 1.0) + 0.5 * rho * velocity * velocity;
  return u;
}

State Euler::flux(const State& u) const {
  const double v = u[1] / u[0];
  const double p = pressure(u);
  State f(3);
  f << u[1], u[1] * v + p, (u[2] + p) * v;
  return f;
}

StateMatrix Euler::jacobian(const State& u) const {
  const double g = gamma_;
  const double v = u[1] / u[0];
  const double energy = u[2] / u[0];
  StateMatrix a(3, 3);
  a << 0.0, 1.0, 0.0,
       0.5 * (g - 3.0) * v * v, (3.0 - g) * v, g - 1.0,
       (g - 1.0) * v * v * v - g * v * energy, g * energy - 1.5 * (g - 1.0) * v * v, g * v;
  return a;
}

EigenSystem Euler::eigensystem(const State& u) const {
  const double v = u[1] / u[0];
  const double c = sound_speed(u);
  const double enthalpy = (u[2] + pressure(u)) / u[0];
  const double b1 = (gamma_ - 1.0) / (c * c);
  const double b2 = 0.5 * b1 * v * v;

  EigenSystem es{StateMatrix(3, 3), StateMatrix(3, 3), State(3)};
  es.values << v - c, v, v + c;
  es.right << 1.0, 1.0, 1.0,
              v - c, v, v + c,
              enthalpy - v * c, 0.5 * v * v, enthalpy + v * c;
  es.left << 0.5 * (b2 + v / c), -0.5 * (b1 * v + 1.0 / c), 0.5 * b1,
             1.0 - b2, b1 * v, -b1,
             0.5 * (b2 - v / c), -0.5 * (b1 * v - 1.0 / c), 0.5 * b1;
  return es;
}

bool Euler::admissible(const State& u) const {
  if (!u.allFinite()) return false;
  if (u[0] < kMinDensity) return false;
  return pressure(u) >= kMinPressure;
}

State Euler::to_box_coordinates(const State& u) const {
  State v(3);
  v << u[0], u[1] / u[0], pressure(u);
  return v;
}

}  // namespace hyperest
