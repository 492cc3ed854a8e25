#pragma once

#include <memory>
#include <string>

#include "hyperest/conservation_law.hpp"
#include "hyperest/spacetime_recon.hpp"

namespace hyperest {

/// Strictly convex entropy eta with entropy flux q, (D eta) Dg = Dq.
class EntropyPair {
 public:
  virtual ~EntropyPair() = default;
  virtual std::string name() const = 0;
  virtual double entropy(const State& u) const = 0;
  virtual double entropy_flux(const State& u) const = 0;
  virtual State gradient(const State& u) const = 0;
  virtual StateMatrix hessian(const State& u) const = 0;
};

using EntropyPtr = std::shared_ptr<const EntropyPair>;

/// eta = u^2 / 2 with q_flux(u) = int_0^u s g'(s) ds supplied by the caller.
class QuadraticEntropy final : public EntropyPair {
 public:
  /// Entropy flux of g(u) = a u + b u^2 / 2: q = a u^2 / 2 + b u^3 / 3.
  QuadraticEntropy(double linear, double quadratic) : a_(linear), b_(quadratic) {}
  std::string name() const override { return "quadratic"; }
  double entropy(const State& u) const override { return 0.5 * u[0] * u[0]; }
  double entropy_flux(const State& u) const override {
    return 0.5 * a_ * u[0] * u[0] + b_ * u[0] * u[0] * u[0] / 3.0;
  }
  State gradient(const State& u) const override { return u; }
  StateMatrix hessian(const State& /*u*/) const override { return StateMatrix::Identity(1, 1); }

 private:
  double a_;
  double b_;
};

/// eta = -rho s / (gamma - 1), s = log(p rho^-gamma), q = velocity * eta.
class EulerEntropy final : public EntropyPair {
 public:
  explicit EulerEntropy(double gamma) : gamma_(gamma) {}
  std::string name() const override { return "euler"; }
  double physical_entropy(const State& u) const;
  double entropy(const State& u) const override;
  double entropy_flux(const State& u) const override;
  State gradient(const State& u) const override;
  StateMatrix hessian(const State& u) const override;

 private:
  double gamma_;
};

/// Default pair for the shipped laws (advection, burgers, euler).
EntropyPtr builtin_entropy(const ConservationLaw& law);

/// Closed box prod_i [lower_i, upper_i] in the box coordinates of a law
/// (primitive variables for Euler).
struct CompactBox {
  State lower;
  State upper;

  int dim() const { return static_cast<int>(lower.size()); }
  bool contains(const State& u, double tol = 1e-12) const;
};

/// Componentwise sample range padded by `padding` times its width on both sides
/// (a degenerate range is padded relative to its magnitude).
CompactBox padded_box(const StateRange& range, double padding = 0.1);

struct BoxCheck {
  bool ok = true;
  double t = 0.0;
  double x = 0.0;
  int component = -1;
  double value = 0.0;
};

/// True iff every sampled value lies in the (closed) box; otherwise the first
/// offending extreme with its location.
BoxCheck verify_in_box(const StateRange& range, const CompactBox& box, double tol = 1e-12);
/// Samples the reconstruction at Gauss times per slab first.
BoxCheck verify_in_box(const SpaceTimeRecon& recon, const CompactBox& box, int time_points = 0,
                       int space_samples = 0, double tol = 1e-12);

struct EntropyConstants {
  double c_eta_lower = 0.0;
  double c_eta_upper = 0.0;
  double c_g = 0.0;
  int resolution = 0;
  double safety = 1.0;
};

/// Extreme eigenvalues of the entropy Hessian and the flux-Hessian bound
/// sqrt(sum_i ||H g_i||_2^2) over a resolution^m grid of the box; lower
/// constant divided and upper constants multiplied by `safety`.
/// Throws ConvexityError on a non-positive-definite sample and DomainError on
/// inadmissible grid states.
EntropyConstants entropy_constants(const EntropyPair& pair, const ConservationLaw& law, const CompactBox& box,
                                   int resolution = 11, double safety = 1.05);

}  // namespace hyperest
