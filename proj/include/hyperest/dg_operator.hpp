#pragma once

#include <vector>

#include "hyperest/conservation_law.hpp"
#include "hyperest/dg_function.hpp"
#include "hyperest/numerical_flux.hpp"

namespace hyperest {

/// The DG spatial operator f : V_q -> V_q defined by
///   int f(u) psi = -int_cells g(u) psi_x + sum_i G(u(x_i^-), u(x_i^+)) [[psi]]_i
/// for all test functions psi. The semi-discrete scheme is u_t = -f(u).
///
/// Volume integrals use a (q+2)-point Gauss rule unless overridden.
class DGOperator {
 public:
  DGOperator(LawPtr law, FluxSpec flux, MeshPtr mesh, int degree, int volume_points = 0);

  const ConservationLaw& law() const { return *law_; }
  const LawPtr& law_ptr() const { return law_; }
  const FluxSpec& flux() const { return flux_; }
  const MeshPtr& mesh() const { return mesh_; }
  int degree() const { return degree_; }
  int dim() const { return law_->dim(); }

  /// Throws StateSpaceError (with location) on inadmissible states.
  DGFunction apply(const DGFunction& u) const;
  Vector apply(const Vector& coeffs) const;

 private:
  void apply_into(const DGFunction& u, Vector& out) const;

  LawPtr law_;
  FluxSpec flux_;
  MeshPtr mesh_;
  int degree_;
  std::vector<double> points_;
  std::vector<double> weights_;
  /// Unscaled P_k(xi_j) and P_k'(xi_j), mode-major.
  std::vector<double> p_table_;
  std::vector<double> dp_table_;
};

DGFunction dg_operator(LawPtr law, const FluxSpec& flux, const DGFunction& u);

}  // namespace hyperest
