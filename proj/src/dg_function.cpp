#include "hyperest/dg_function.hpp"

#include <algorithm>
#include <cassert>

#include "hyperest/errors.hpp"
#include "hyperest/legendre.hpp"
#include "hyperest/quadrature.hpp"

namespace hyperest {

DGFunction::DGFunction(MeshPtr mesh, int degree, int dim)
    : mesh_(std::move(mesh)), degree_(degree), dim_(dim) {
  if (degree_ < 0 || degree_ > 30) throw UnsupportedError("polynomial degree outside 0..30");
  if (dim_ < 1 || dim_ > kMaxSystemDim) throw UnsupportedError("system dimension out of range");
  coeffs_ = Vector::Zero(static_cast<Eigen::Index>(mesh_->cells()) * block_size());
}

DGFunction::DGFunction(MeshPtr mesh, int degree, int dim, Vector coeffs) : DGFunction(std::move(mesh), degree, dim) {
  if (coeffs.size() != coeffs_.size()) throw UnsupportedError("coefficient vector has wrong size");
  coeffs_ = std::move(coeffs);
}

void basis_values(int degree, double xi, double h, double* out) {
  for (int k = 0; k <= degree; ++k) {
    out[k] = legendre_scale(k, h) * legendre_eval(k, xi).first;
  }
}

void basis_derivatives(int degree, double xi, double h, double* out) {
  for (int k = 0; k <= degree; ++k) {
    out[k] = legendre_scale(k, h) * legendre_eval(k, xi).second * 2.0 / h;
  }
}

State DGFunction::eval_reference(int cell, double xi) const {
  double phi[32];
  basis_values(degree_, xi, mesh_->width(cell), phi);
  const auto block = cell_block(cell);
  State v(dim_);
  for (int c = 0; c < dim_; ++c) {
    double s = 0.0;
    for (int k = 0; k <= degree_; ++k) s += block(k, c) * phi[k];
    v[c] = s;
  }
  return v;
}

State DGFunction::eval_dx_reference(int cell, double xi) const {
  double dphi[32];
  basis_derivatives(degree_, xi, mesh_->width(cell), dphi);
  const auto block = cell_block(cell);
  State v(dim_);
  for (int c = 0; c < dim_; ++c) {
    double s = 0.0;
    for (int k = 0; k <= degree_; ++k) s += block(k, c) * dphi[k];
    v[c] = s;
  }
  return v;
}

State DGFunction::eval(double x) const {
  const int cell = mesh_->locate(x);
  return eval_reference(cell, mesh_->to_reference(cell, mesh_->wrap(x)));
}

State DGFunction::trace_minus(int interface) const { return eval_reference(mesh_->left_cell(interface), 1.0); }

State DGFunction::trace_plus(int interface) const { return eval_reference(mesh_->right_cell(interface), -1.0); }

Traces traces(const DGFunction& u, int interface) {
  Traces t{u.trace_minus(interface), u.trace_plus(interface), State()};
  t.jump = t.minus - t.plus;
  return t;
}

DGFunction l2_project(MeshPtr mesh, int degree, int dim, const StateFunction& u, int quad_points) {
  DGFunction out(mesh, degree, dim);
  const auto& rule = cached_gauss_rule(quad_points);
  double phi[32];
  for (int cell = 0; cell < mesh->cells(); ++cell) {
    const double h = mesh->width(cell);
    auto block = out.cell_block(cell);
    for (int j = 0; j < rule.size(); ++j) {
      const State v = u(mesh->to_physical(cell, rule.points[j]));
      basis_values(degree, rule.points[j], h, phi);
      const double wj = rule.weights[j] * 0.5 * h;
      for (int c = 0; c < dim; ++c)
        for (int k = 0; k <= degree; ++k) block(k, c) += wj * v[c] * phi[k];
    }
  }
  return out;
}

DGFunction raise_degree(const DGFunction& u, int degree) {
  assert(degree >= u.degree());
  DGFunction out(u.mesh_ptr(), degree, u.dim());
  for (int cell = 0; cell < u.cells(); ++cell) {
    out.cell_block(cell).topRows(u.modes()) = u.cell_block(cell);
  }
  return out;
}

double l2_distance_squared(const DGFunction& a, const DGFunction& b) {
  if (a.mesh_ptr() != b.mesh_ptr() && a.cells() != b.cells()) {
    throw UnsupportedError("l2_distance_squared: functions live on different meshes");
  }
  const int modes = std::max(a.modes(), b.modes());
  double sum = 0.0;
  for (int cell = 0; cell < a.cells(); ++cell) {
    for (int c = 0; c < a.dim(); ++c) {
      for (int k = 0; k < modes; ++k) {
        const double ak = k < a.modes() ? a.cell_block(cell)(k, c) : 0.0;
        const double bk = k < b.modes() ? b.cell_block(cell)(k, c) : 0.0;
        sum += (ak - bk) * (ak - bk);
      }
    }
  }
  return sum;
}

double l2_error_squared(const DGFunction& u, const StateFunction& exact, int quad_points) {
  const auto& rule = cached_gauss_rule(quad_points);
  const Mesh1D& mesh = u.mesh();
  double sum = 0.0;
  for (int cell = 0; cell < mesh.cells(); ++cell) {
    const double h = mesh.width(cell);
    for (int j = 0; j < rule.size(); ++j) {
      const State diff = u.eval_reference(cell, rule.points[j]) - exact(mesh.to_physical(cell, rule.points[j]));
      sum += rule.weights[j] * 0.5 * h * diff.squaredNorm();
    }
  }
  return sum;
}

State integral(const DGFunction& u) {
  State total = State::Zero(u.dim());
  for (int cell = 0; cell < u.cells(); ++cell) {
    // only the constant mode has nonzero mean: int s_0 P_0 = sqrt(h)
    total += u.cell_block(cell).row(0).transpose() * std::sqrt(u.mesh().width(cell));
  }
  return total;
}

double jump_indicator(const DGFunction& u) {
  double sum = 0.0;
  for (int i = 0; i < u.cells(); ++i) {
    sum += u.mesh().interface_width(i) * traces(u, i).jump.squaredNorm();
  }
  return sum;
}

}  // namespace hyperest
