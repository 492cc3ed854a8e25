#pragma once

#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hyperest/hermite.hpp"
#include "hyperest/time_integration.hpp"

namespace hyperest {

/// How second time derivatives f_2 = d/dt F(t, u(t)) are obtained.
enum class DerivativeMode { exact_callable, directional, backward_fd };

std::string to_string(DerivativeMode mode);

/// H(p, d, r): value and d+1 derivatives at t_{n-p}..t_n, value and r+1
/// derivatives at t_{n+1}. r = -1 prescribes only the value at t_{n+1}.
struct ReconSpec {
  int p = 0;
  int d = 0;
  int r = 0;
  DerivativeMode mode = DerivativeMode::directional;

  int degree() const { return (d + 2) * (p + 1) + r + 1; }
  bool needs_second_derivative() const { return d >= 1 || r >= 1; }
  /// Throws UnsupportedError outside H(p,0,r<=0) and H(0,1,r<=1).
  void validate() const;
  std::string label() const;
};

/// Parses "H(p,d,r)" (spaces allowed).
ReconSpec parse_recon(const std::string& text);

/// f_2 ~ [F(t+e,u) - F(t-e,u)]/(2e) + [F(t,u+e F) - F(t,u-e F)]/(2e), e = tau^2.
Vector f2_directional(const Rhs& f, double t, const Vector& u, double tau);

/// Five-point one-sided stencils for d/dt F at the newest (backward) or
/// oldest (forward) entry; `history` is ordered oldest first.
Vector f2_backward_fd(std::span<const Vector> history, double tau);
Vector f2_forward_fd(std::span<const Vector> history, double tau);

/// Piecewise polynomial in time with vector values, one Newton form per step
/// interval in the local variable s = (t - anchor) / scale.
class TemporalPoly {
 public:
  struct Piece {
    double anchor = 0.0;
    double scale = 1.0;
    NewtonForm<double, Vector> form;
  };

  TemporalPoly() = default;
  TemporalPoly(std::vector<double> breakpoints, std::vector<Piece> pieces);

  int intervals() const { return static_cast<int>(pieces_.size()); }
  const std::vector<double>& breakpoints() const { return breaks_; }
  double start() const { return breaks_.front(); }
  double end() const { return breaks_.back(); }
  int degree() const { return pieces_.empty() ? 0 : pieces_.front().form.degree(); }
  const Piece& piece(int interval) const { return pieces_[interval]; }

  /// Interval containing t; breakpoints belong to the interval on their left.
  /// Throws DomainError outside [start, end].
  int locate(double t) const;

  Vector value(double t) const;
  Vector derivative(double t) const;
  std::pair<Vector, Vector> value_and_derivative(double t) const;
  /// Evaluates the polynomial of `interval` (possibly outside it: one-sided traces).
  std::pair<Vector, Vector> eval_on(int interval, double t) const;

 private:
  std::vector<double> breaks_;
  std::vector<Piece> pieces_;
};

/// Builds one interval polynomial from (time, derivatives) conditions.
/// Derivative data are rescaled to the local variable s = (t - anchor) / scale.
TemporalPoly::Piece hermite_interval(const std::vector<std::pair<double, std::vector<Vector>>>& conditions,
                                     double anchor, double scale);

using SecondDerivative = std::function<Vector(double, const Vector&)>;

/// H(p,d,r) reconstruction of a trajectory. The first p intervals reuse the
/// conditions at t_0..t_{p+1} (the polynomial of interval p).
/// `f` is needed for the directional mode, `exact_f2` for exact_callable.
TemporalPoly reconstruct(const Trajectory& traj, const ReconSpec& spec, const Rhs& f = {},
                         const SecondDerivative& exact_f2 = {});

/// Sign of the residual: ode gives R = u' - F(t,u); dg_operator treats the
/// callable as the DG operator f of u' = -f(u), giving R = u' + f(u).
enum class ResidualSign { ode, dg_operator };

std::function<Vector(double)> temporal_residual(const TemporalPoly& recon, const Rhs& f, ResidualSign sign);

struct ResidualNorms {
  double l1 = 0.0;
  double l2 = 0.0;
  double linf = 0.0;
};

/// L1/L2 norms by Gauss quadrature (`quad_points` per interval, default degree+2)
/// and a sampled sup norm (`sup_samples` equispaced per interval, one-sided ends).
ResidualNorms residual_norms(const TemporalPoly& recon, const Rhs& f, ResidualSign sign, int quad_points = 0,
                             int sup_samples = 16);

struct OdeBoundReport {
  double lipschitz = 0.0;
  double residual_l1 = 0.0;
  double residual_l2 = 0.0;
  double initial_error = 0.0;
  double horizon = 0.0;
  /// (|u0 - u_hat(0)| + ||R||_L1) e^{LT}
  double bound_linf = 0.0;
  /// sqrt((|u0 - u_hat(0)|^2 + ||R||_L2^2) e^{(L+1)T})
  double bound_l2 = 0.0;
};

OdeBoundReport ode_error_bound(double residual_l1, double residual_l2, double lipschitz, double horizon,
                               double initial_error);

/// max over trajectory states of the spectral norm of a finite-difference
/// Jacobian of F, inflated by `safety`.
double sampled_lipschitz(const Rhs& f, const Trajectory& traj, double safety = 1.1);

}  // namespace hyperest
