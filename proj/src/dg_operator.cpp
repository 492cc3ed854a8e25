#include "hyperest/dg_operator.hpp"

#include <cmath>
#include <sstream>

#include "hyperest/errors.hpp"
#include "hyperest/legendre.hpp"
#include "hyperest/quadrature.hpp"

namespace hyperest {

DGOperator::DGOperator(LawPtr law, FluxSpec flux, MeshPtr mesh, int degree, int volume_points)
    : law_(std::move(law)), flux_(flux), mesh_(std::move(mesh)), degree_(degree) {
  const int n = volume_points > 0 ? volume_points : degree + 2;
  const auto& rule = cached_gauss_rule(n);
  points_ = rule.points;
  weights_ = rule.weights;
  p_table_.resize(static_cast<std::size_t>(degree + 1) * n);
  dp_table_.resize(p_table_.size());
  for (int k = 0; k <= degree; ++k) {
    for (int j = 0; j < n; ++j) {
      const auto [p, dp] = legendre_eval(k, points_[j]);
      p_table_[k * n + j] = p;
      dp_table_[k * n + j] = dp;
    }
  }
}

namespace {

[[noreturn]] void throw_inadmissible(const char* where, double x) {
  std::ostringstream msg;
  msg << "inadmissible state in DG operator (" << where << ") at x = " << x;
  throw StateSpaceError(msg.str(), x);
}

}  // namespace

void DGOperator::apply_into(const DGFunction& u, Vector& out) const {
  const Mesh1D& mesh = *mesh_;
  const int m = law_->dim();
  const int modes = degree_ + 1;
  const int npts = static_cast<int>(points_.size());
  const int cells = mesh.cells();
  out.setZero(u.coeffs().size());

  auto out_block = [&](int cell) {
    return Eigen::Map<Eigen::MatrixXd>(out.data() + static_cast<Eigen::Index>(cell) * m * modes, modes, m);
  };

  // volume term: -int g(u) phi_k' dx = -sum_j w_j g(u_j) s_k P_k'(xi_j)
  for (int cell = 0; cell < cells; ++cell) {
    const double h = mesh.width(cell);
    const auto block = u.cell_block(cell);
    auto res = out_block(cell);
    for (int j = 0; j < npts; ++j) {
      State val = State::Zero(m);
      for (int k = 0; k < modes; ++k) val += block.row(k).transpose() * (legendre_scale(k, h) * p_table_[k * npts + j]);
      if (!law_->admissible(val)) throw_inadmissible("volume", mesh.to_physical(cell, points_[j]));
      const State g = law_->flux(val);
      for (int k = 0; k < modes; ++k) {
        res.row(k) -= (weights_[j] * legendre_scale(k, h) * dp_table_[k * npts + j]) * g.transpose();
      }
    }
  }

  // interface terms: +G_{c+1} phi_k(x_{c+1}^-) - G_c phi_k(x_c^+)
  for (int i = 0; i < cells; ++i) {
    const State minus = u.trace_minus(i);
    const State plus = u.trace_plus(i);
    if (!law_->admissible(minus) || !law_->admissible(plus)) throw_inadmissible("trace", mesh.interface_x(i));
    const State flux = numerical_flux(*law_, flux_, minus, plus, mesh.interface_width(i));
    const int left = mesh.left_cell(i);
    const int right = mesh.right_cell(i);
    const double hl = mesh.width(left);
    const double hr = mesh.width(right);
    auto res_left = out_block(left);
    auto res_right = out_block(right);
    for (int k = 0; k < modes; ++k) {
      res_left.row(k) += legendre_scale(k, hl) * flux.transpose();
      res_right.row(k) -= ((k % 2 == 0) ? 1.0 : -1.0) * legendre_scale(k, hr) * flux.transpose();
    }
  }
}

DGFunction DGOperator::apply(const DGFunction& u) const {
  DGFunction out(mesh_, degree_, law_->dim());
  apply_into(u, out.coeffs());
  return out;
}

Vector DGOperator::apply(const Vector& coeffs) const {
  Vector out;
  apply_into(DGFunction(mesh_, degree_, law_->dim(), coeffs), out);
  return out;
}

DGFunction dg_operator(LawPtr law, const FluxSpec& flux, const DGFunction& u) {
  DGOperator op(std::move(law), flux, u.mesh_ptr(), u.degree());
  return op.apply(u);
}

}  // namespace hyperest
