#include "hyperest/spacetime_recon.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SparseLU>

#include "hyperest/errors.hpp"
#include "hyperest/legendre.hpp"
#include "hyperest/quadrature.hpp"

namespace hyperest {

void StateRange::include(const State& u, double t, double x) {
  if (empty()) {
    lower = upper = u;
    lower_t.assign(u.size(), t);
    upper_t = lower_t;
    lower_x.assign(u.size(), x);
    upper_x = lower_x;
    return;
  }
  for (int c = 0; c < u.size(); ++c) {
    if (u[c] < lower[c]) {
      lower[c] = u[c];
      lower_t[c] = t;
      lower_x[c] = x;
    }
    if (u[c] > upper[c]) {
      upper[c] = u[c];
      upper_t[c] = t;
      upper_x[c] = x;
    }
  }
}

void StateRange::merge(const StateRange& other) {
  if (other.empty()) return;
  if (empty()) {
    *this = other;
    return;
  }
  for (int c = 0; c < lower.size(); ++c) {
    if (other.lower[c] < lower[c]) {
      lower[c] = other.lower[c];
      lower_t[c] = other.lower_t[c];
      lower_x[c] = other.lower_x[c];
    }
    if (other.upper[c] > upper[c]) {
      upper[c] = other.upper[c];
      upper_t[c] = other.upper_t[c];
      upper_x[c] = other.upper_x[c];
    }
  }
}

DGFunction spatial_reconstruct_from(const DGFunction& uh, const std::vector<State>& w) {
  const Mesh1D& mesh = uh.mesh();
  const int q = uh.degree();
  const int m = uh.dim();
  if (static_cast<int>(w.size()) != mesh.cells()) throw UnsupportedError("one w value per interface required");
  DGFunction out(uh.mesh_ptr(), q + 1, m);
  for (int cell = 0; cell < mesh.cells(); ++cell) {
    const double h = mesh.width(cell);
    const auto in = uh.cell_block(cell);
    auto dst = out.cell_block(cell);
    const State& wl = w[cell];
    const State& wr = w[mesh.wrap_interface(cell + 1)];
    for (int c = 0; c < m; ++c) {
      double right = wr[c];
      double left = wl[c];
      double sign = 1.0;
      for (int k = 0; k < q; ++k) {
        const double sk = legendre_scale(k, h);
        dst(k, c) = in(k, c);
        right -= in(k, c) * sk;
        left -= in(k, c) * sk * sign;
        sign = -sign;
      }
      // sign == (-1)^q here
      const double b = sign * left;
      dst(q, c) = (right + b) / (2.0 * legendre_scale(q, h));
      dst(q + 1, c) = (right - b) / (2.0 * legendre_scale(q + 1, h));
    }
  }
  return out;
}

bool reconstruction_projection_supported(const FluxSpec& spec) {
  return spec.kind != FluxKind::llf && spec.kind != FluxKind::roe_avg;
}

DGFunction reconstruction_projection(const ConservationLaw& law, const FluxSpec& spec, MeshPtr mesh, int degree,
                                     const StateFunction& u, int quad_points) {
  if (!reconstruction_projection_supported(spec)) {
    throw UnsupportedError("reconstruction projection needs a flux whose w is not the trace average");
  }
  DGFunction uh = l2_project(mesh, degree, law.dim(), u, quad_points);
  const int cells = mesh->cells();
  const int m = law.dim();
  const int q = degree;
  const double parity = q % 2 == 0 ? 1.0 : -1.0;
  std::vector<State> target(cells);
  double scale = 0.0;
  for (int i = 0; i < cells; ++i) {
    target[i] = u(mesh->interface_x(i));
    scale = std::max(scale, target[i].cwiseAbs().maxCoeff());
  }
  const double tol = 1e-12 * std::max(scale, 1.0);

  using Sparse = Eigen::SparseMatrix<double>;
  Vector r(static_cast<Eigen::Index>(cells) * m);
  for (int iter = 0; iter < 30; ++iter) {
    std::vector<Eigen::Triplet<double>> entries;
    entries.reserve(static_cast<std::size_t>(2 * cells * m * m));
    for (int i = 0; i < cells; ++i) {
      const int left = mesh->left_cell(i);
      const int right = mesh->right_cell(i);
      const State a = uh.trace_minus(i);
      const State b = uh.trace_plus(i);
      const double h = mesh->interface_width(i);
      r.segment(i * m, m) = flux_w(law, spec, a, b, h) - target[i];
      const double sl = legendre_scale(q, mesh->width(left));
      const double sr = legendre_scale(q, mesh->width(right)) * parity;
      for (int j = 0; j < m; ++j) {
        const State e = State::Unit(m, j);
        const State zero = State::Zero(m);
        const State da = flux_w_rate(law, spec, a, b, e, zero, h) * sl;
        const State db = flux_w_rate(law, spec, a, b, zero, e, h) * sr;
        for (int c = 0; c < m; ++c) {
          entries.emplace_back(i * m + c, left * m + j, da[c]);
          entries.emplace_back(i * m + c, right * m + j, db[c]);
        }
      }
    }
    if (r.lpNorm<Eigen::Infinity>() <= tol) return uh;
    Sparse jac(r.size(), r.size());
    jac.setFromTriplets(entries.begin(), entries.end());
    Eigen::SparseLU<Sparse> lu;
    lu.compute(jac);
    if (lu.info() != Eigen::Success) throw ConditioningError("reconstruction projection: singular Jacobian");
    const Vector step = lu.solve(r);
    if (lu.info() != Eigen::Success || !step.allFinite()) {
      throw ConditioningError("reconstruction projection: linear solve failed");
    }
    for (int k = 0; k < cells; ++k) uh.cell_block(k).row(q) -= step.segment(k * m, m).transpose();
    if (step.lpNorm<Eigen::Infinity>() <= 1e-3 * tol) return uh;
  }
  throw ConditioningError("reconstruction projection: Newton did not converge");
}

namespace {

std::vector<State> interface_w(const ConservationLaw& law, const FluxSpec& spec, const DGFunction& uh) {
  const Mesh1D& mesh = uh.mesh();
  std::vector<State> w(mesh.cells());
  for (int i = 0; i < mesh.cells(); ++i) {
    try {
      w[i] = flux_w(law, spec, uh.trace_minus(i), uh.trace_plus(i), mesh.interface_width(i));
    } catch (const StateSpaceError& e) {
      throw StateSpaceError(e.what(), mesh.interface_x(i), e.t());
    }
  }
  return w;
}

}  // namespace

DGFunction spatial_reconstruct(const ConservationLaw& law, const FluxSpec& spec, const DGFunction& uh) {
  return spatial_reconstruct_from(uh, interface_w(law, spec, uh));
}

SpaceTimeRecon::SpaceTimeRecon(LawPtr law, FluxSpec flux, MeshPtr mesh, int degree,
                               std::shared_ptr<const TemporalPoly> recon)
    : law_(std::move(law)), flux_(flux), mesh_(std::move(mesh)), degree_(degree), recon_(std::move(recon)) {}

SpaceTimeSnapshot SpaceTimeRecon::at_on(int slab, double t) const {
  auto [v, dv] = recon_->eval_on(slab, t);
  SpaceTimeSnapshot snap;
  snap.t = t;
  snap.ut = DGFunction(mesh_, degree_, dim(), std::move(v));
  snap.dut = DGFunction(mesh_, degree_, dim(), std::move(dv));
  const Mesh1D& mesh = *mesh_;
  std::vector<State> w(mesh.cells());
  std::vector<State> wdot(mesh.cells());
  for (int i = 0; i < mesh.cells(); ++i) {
    const State a = snap.ut.trace_minus(i);
    const State b = snap.ut.trace_plus(i);
    const double h = mesh.interface_width(i);
    try {
      w[i] = flux_w(*law_, flux_, a, b, h);
      wdot[i] = flux_w_rate(*law_, flux_, a, b, snap.dut.trace_minus(i), snap.dut.trace_plus(i), h);
    } catch (const StateSpaceError& e) {
      throw StateSpaceError(e.what(), mesh.interface_x(i), t);
    }
  }
  snap.ust = spatial_reconstruct_from(snap.ut, w);
  snap.dust = spatial_reconstruct_from(snap.dut, wdot);
  return snap;
}

SpaceTimeSnapshot SpaceTimeRecon::at(double t) const { return at_on(recon_->locate(t), t); }

DGFunction SpaceTimeRecon::ust(double t) const {
  DGFunction ut(mesh_, degree_, dim(), recon_->value(t));
  try {
    return spatial_reconstruct(*law_, flux_, ut);
  } catch (const StateSpaceError& e) {
    throw StateSpaceError(e.what(), e.x(), t);
  }
}

State spacetime_residual_at(const ConservationLaw& law, const DGFunction& ust, const DGFunction& dust, int cell,
                            double xi) {
  const State v = ust.eval_reference(cell, xi);
  const State vx = ust.eval_dx_reference(cell, xi);
  return dust.eval_reference(cell, xi) + law.jacobian(v) * vx;
}

namespace {

/// Unscaled Legendre tables at fixed reference points, mode-major.
struct BasisTable {
  int modes = 0;
  std::vector<double> xi;
  std::vector<double> p;
  std::vector<double> dp;

  BasisTable(int degree, std::vector<double> points) : modes(degree + 1), xi(std::move(points)) {
    const int n = static_cast<int>(xi.size());
    p.resize(static_cast<std::size_t>(modes) * n);
    dp.resize(p.size());
    for (int k = 0; k < modes; ++k) {
      for (int j = 0; j < n; ++j) {
        auto [v, d] = legendre_eval(k, xi[j]);
        p[k * n + j] = v;
        dp[k * n + j] = d;
      }
    }
  }
  int size() const { return static_cast<int>(xi.size()); }
};

/// Value (or x-derivative with `derivative`) of `u` at table point j of `cell`.
State table_eval(const DGFunction& u, const BasisTable& tab, int cell, int j, bool derivative) {
  const double h = u.mesh().width(cell);
  const auto block = u.cell_block(cell);
  const int n = tab.size();
  State v = State::Zero(u.dim());
  for (int k = 0; k < u.modes(); ++k) {
    const double s = legendre_scale(k, h) * (derivative ? tab.dp[k * n + j] * 2.0 / h : tab.p[k * n + j]);
    for (int c = 0; c < u.dim(); ++c) v[c] += block(k, c) * s;
  }
  return v;
}

}  // namespace

ResidualField::ResidualField(SpaceTimeRecon recon, ResidualOptions options) : recon_(std::move(recon)) {
  const int q = recon_.degree();
  const int nt = options.time_points > 0 ? options.time_points : q + 3;
  const int nx = options.space_points > 0 ? options.space_points : q + 3;
  const int ns = std::max(options.sup_samples > 0 ? options.sup_samples : q + 4, 2);
  const auto& trule = cached_gauss_rule(nt);
  const auto& xrule = cached_gauss_rule(nx);
  std::vector<double> equi(ns);
  for (int j = 0; j < ns; ++j) equi[j] = -1.0 + 2.0 * j / (ns - 1);
  const BasisTable gauss_tab(q + 1, xrule.points);
  const BasisTable sup_tab(q + 1, equi);
  const ConservationLaw& law = recon_.law();
  const Mesh1D& mesh = *recon_.mesh();
  const auto& breaks = recon_.temporal().breakpoints();

  slab_l2sq_.assign(recon_.slabs(), 0.0);
  sup_dx_.assign(recon_.slabs(), 0.0);
  for (int n = 0; n < recon_.slabs(); ++n) {
    const double half_t = 0.5 * (breaks[n + 1] - breaks[n]);
    double acc = 0.0;
    double sup = 0.0;
    for (int i = 0; i < trule.size(); ++i) {
      const double t = breaks[n] + half_t * (trule.points[i] + 1.0);
      const SpaceTimeSnapshot snap = recon_.at_on(n, t);
      for (int cell = 0; cell < mesh.cells(); ++cell) {
        const double half_x = 0.5 * mesh.width(cell);
        double cell_acc = 0.0;
        for (int j = 0; j < gauss_tab.size(); ++j) {
          const State v = table_eval(snap.ust, gauss_tab, cell, j, false);
          if (!law.admissible(v)) {
            throw StateSpaceError("inadmissible reconstruction in residual", mesh.to_physical(cell, xrule.points[j]),
                                  t);
          }
          const State vx = table_eval(snap.ust, gauss_tab, cell, j, true);
          const State r = table_eval(snap.dust, gauss_tab, cell, j, false) + law.jacobian(v) * vx;
          cell_acc += xrule.weights[j] * r.squaredNorm();
          range_.include(law.to_box_coordinates(v), t, mesh.to_physical(cell, xrule.points[j]));
        }
        acc += half_x * trule.weights[i] * cell_acc;
        for (int j = 0; j < sup_tab.size(); ++j) {
          sup = std::max(sup, table_eval(snap.ust, sup_tab, cell, j, true).norm());
          const State v = table_eval(snap.ust, sup_tab, cell, j, false);
          if (!law.admissible(v)) {
            throw StateSpaceError("inadmissible reconstruction in residual", mesh.to_physical(cell, equi[j]), t);
          }
          range_.include(law.to_box_coordinates(v), t, mesh.to_physical(cell, equi[j]));
        }
      }
    }
    slab_l2sq_[n] = half_t * acc;
    sup_dx_[n] = sup;
  }
}

State ResidualField::evaluate(double t, double x) const {
  const SpaceTimeSnapshot snap = recon_.at(t);
  const Mesh1D& mesh = *recon_.mesh();
  const int cell = mesh.locate(x);
  return spacetime_residual_at(recon_.law(), snap.ust, snap.dust, cell, mesh.to_reference(cell, mesh.wrap(x)));
}

ResidualField::Split ResidualField::split(double t, double x) const {
  const SpaceTimeSnapshot snap = recon_.at(t);
  const Mesh1D& mesh = *recon_.mesh();
  const int cell = mesh.locate(x);
  const double xi = mesh.to_reference(cell, mesh.wrap(x));
  const DGOperator op(recon_.law_ptr(), recon_.flux(), recon_.mesh(), recon_.degree());
  const DGFunction fu = op.apply(snap.ut);
  const State v = snap.ust.eval_reference(cell, xi);
  const State flux_div = recon_.law().jacobian(v) * snap.ust.eval_dx_reference(cell, xi);
  const State f_ut = fu.eval_reference(cell, xi);
  Split s;
  s.rst = snap.dust.eval_reference(cell, xi) + flux_div;
  s.rt = snap.dut.eval_reference(cell, xi) + f_ut;
  s.rs = snap.dust.eval_reference(cell, xi) - snap.dut.eval_reference(cell, xi) + flux_div - f_ut;
  return s;
}

StateRange sample_range(const SpaceTimeRecon& recon, int time_points, int space_samples) {
  const int q = recon.degree();
  const auto& trule = cached_gauss_rule(time_points > 0 ? time_points : q + 3);
  const auto& xrule = cached_gauss_rule(q + 3);
  const int ns = std::max(space_samples > 0 ? space_samples : q + 4, 2);
  std::vector<double> points = xrule.points;
  for (int j = 0; j < ns; ++j) points.push_back(-1.0 + 2.0 * j / (ns - 1));
  const BasisTable tab(q + 1, points);
  const Mesh1D& mesh = *recon.mesh();
  const auto& breaks = recon.temporal().breakpoints();
  StateRange range;
  for (int n = 0; n < recon.slabs(); ++n) {
    for (int i = 0; i < trule.size(); ++i) {
      const double t = breaks[n] + 0.5 * (breaks[n + 1] - breaks[n]) * (trule.points[i] + 1.0);
      DGFunction ut(recon.mesh(), q, recon.dim(), recon.temporal().eval_on(n, t).first);
      const DGFunction ust = spatial_reconstruct(recon.law(), recon.flux(), ut);
      for (int cell = 0; cell < mesh.cells(); ++cell) {
        for (int j = 0; j < tab.size(); ++j) {
          range.include(recon.law().to_box_coordinates(table_eval(ust, tab, cell, j, false)), t,
                        mesh.to_physical(cell, points[j]));
        }
      }
    }
  }
  return range;
}

double residual_l2(const ResidualField& field, double t_end) {
  const auto& breaks = field.recon().temporal().breakpoints();
  const double tol = 1e-9 * std::max(1.0, std::abs(t_end));
  double acc = 0.0;
  bool hit = std::abs(t_end - breaks.front()) <= tol;
  for (int n = 0; n < field.slabs() && !hit; ++n) {
    acc += field.slab_l2_squared(n);
    hit = std::abs(breaks[n + 1] - t_end) <= tol;
  }
  if (!hit) throw DomainError("residual_l2: t_end " + std::to_string(t_end) + " is not a time node");
  return std::sqrt(acc);
}

}  // namespace hyperest
