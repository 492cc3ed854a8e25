#pragma once

#include <memory>
#include <string>

#include "hyperest/types.hpp"

namespace hyperest {

/// Right/left eigenvectors and eigenvalues of a flux Jacobian:
/// left * jacobian * right = diag(values), left * right = I.
struct EigenSystem {
  StateMatrix right;
  StateMatrix left;
  State values;
};

/// Flux g of a 1D system of conservation laws u_t + g(u)_x = 0.
class ConservationLaw {
 public:
  virtual ~ConservationLaw() = default;

  virtual std::string name() const = 0;
  virtual int dim() const = 0;
  virtual State flux(const State& u) const = 0;
  virtual StateMatrix jacobian(const State& u) const = 0;
  virtual EigenSystem eigensystem(const State& u) const = 0;
  virtual bool admissible(const State& u) const { return u.allFinite(); }

  /// Coordinates in which state ranges and compact boxes are expressed.
  /// Identity by default; a box in these coordinates must map to admissible states.
  virtual State to_box_coordinates(const State& u) const { return u; }
  virtual State from_box_coordinates(const State& v) const { return v; }

  /// Hessian of flux component `component`. Default: central differences of
  /// the analytic Jacobian.
  virtual StateMatrix flux_hessian(const State& u, int component) const;

  /// Largest |eigenvalue| of the Jacobian.
  double max_speed(const State& u) const;
};

using LawPtr = std::shared_ptr<const ConservationLaw>;

class LinearAdvection final : public ConservationLaw {
 public:
  explicit LinearAdvection(double speed) : speed_(speed) {}
  std::string name() const override { return "advection"; }
  int dim() const override { return 1; }
  double speed() const { return speed_; }
  State flux(const State& u) const override { return speed_ * u; }
  StateMatrix jacobian(const State& u) const override;
  EigenSystem eigensystem(const State& u) const override;
  StateMatrix flux_hessian(const State& u, int component) const override;

 private:
  double speed_;
};

class Burgers final : public ConservationLaw {
 public:
  std::string name() const override { return "burgers"; }
  int dim() const override { return 1; }
  State flux(const State& u) const override { return 0.5 * u.cwiseProduct(u); }
  StateMatrix jacobian(const State& u) const override;
  EigenSystem eigensystem(const State& u) const override;
  StateMatrix flux_hessian(const State& u, int component) const override;
};

/// Ideal-gas Euler equations in conservative variables (rho, rho u, E).
class Euler final : public ConservationLaw {
 public:
  static constexpr double kMinDensity = 1e-8;
  static constexpr double kMinPressure = 1e-8;

  explicit Euler(double gamma = 1.4) : gamma_(gamma) {}
  std::string name() const override { return "euler"; }
  int dim() const override { return 3; }
  double gamma() const { return gamma_; }

  double pressure(const State& u) const;
  double sound_speed(const State& u) const;
  State from_primitive(double rho, double velocity, double p) const;

  State flux(const State& u) const override;
  StateMatrix jacobian(const State& u) const override;
  /// Analytic eigenvectors with unit first component in each right eigenvector.
  EigenSystem eigensystem(const State& u) const override;
  bool admissible(const State& u) const override;
  /// Primitive variables (rho, velocity, p).
  State to_box_coordinates(const State& u) const override;
  State from_box_coordinates(const State& v) const override { return from_primitive(v[0], v[1], v[2]); }

 private:
  double gamma_;
};

}  // namespace hyperest
