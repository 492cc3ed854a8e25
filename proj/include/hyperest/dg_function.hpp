#pragma once

#include <functional>
#include <vector>

#include "hyperest/mesh.hpp"
#include "hyperest/types.hpp"

namespace hyperest {

/// Piecewise polynomial of degree q with values in R^m on a periodic mesh,
/// expanded in L2-orthonormal Legendre polynomials on each cell.
///
/// Coefficients are stored flat: cell-major, then component, then mode, so a
/// cell block maps onto a (q+1) x m column-major matrix.
class DGFunction {
 public:
  DGFunction() = default;
  DGFunction(MeshPtr mesh, int degree, int dim);
  DGFunction(MeshPtr mesh, int degree, int dim, Vector coeffs);

  const Mesh1D& mesh() const { return *mesh_; }
  const MeshPtr& mesh_ptr() const { return mesh_; }
  int degree() const { return degree_; }
  int dim() const { return dim_; }
  int modes() const { return degree_ + 1; }
  int cells() const { return mesh_->cells(); }
  int block_size() const { return dim_ * modes(); }

  const Vector& coeffs() const { return coeffs_; }
  Vector& coeffs() { return coeffs_; }

  Eigen::Map<const Eigen::MatrixXd> cell_block(int cell) const {
    return {coeffs_.data() + static_cast<Eigen::Index>(cell) * block_size(), modes(), dim_};
  }
  Eigen::Map<Eigen::MatrixXd> cell_block(int cell) {
    return {coeffs_.data() + static_cast<Eigen::Index>(cell) * block_size(), modes(), dim_};
  }

  State eval_reference(int cell, double xi) const;
  State eval_dx_reference(int cell, double xi) const;
  /// Value at x; an interface point is evaluated from the cell on its right.
  State eval(double x) const;

  State trace_minus(int interface) const;
  State trace_plus(int interface) const;

 private:
  MeshPtr mesh_;
  int degree_ = 0;
  int dim_ = 1;
  Vector coeffs_;
};

struct Traces {
  State minus;
  State plus;
  /// u(x_i^-) - u(x_i^+)
  State jump;
};

Traces traces(const DGFunction& u, int interface);

/// Orthonormal-basis values s_k P_k(xi), k = 0..degree, on a cell of width h.
void basis_values(int degree, double xi, double h, double* out);
/// x-derivatives of the orthonormal basis on a cell of width h.
void basis_derivatives(int degree, double xi, double h, double* out);

using StateFunction = std::function<State(double)>;

DGFunction l2_project(MeshPtr mesh, int degree, int dim, const StateFunction& u, int quad_points);

/// Copies a function into a higher-degree space (zero padding of modes).
DGFunction raise_degree(const DGFunction& u, int degree);

/// Exact L2 distance squared between functions on the same mesh (coefficient norm).
double l2_distance_squared(const DGFunction& a, const DGFunction& b);

/// L2 distance squared to an arbitrary function by per-cell Gauss quadrature.
double l2_error_squared(const DGFunction& u, const StateFunction& exact, int quad_points);

/// Cell-wise integral of every component.
State integral(const DGFunction& u);

/// sum_i h_i |[[u]]_i|^2 with h_i the interface width.
double jump_indicator(const DGFunction& u);

}  // namespace hyperest
