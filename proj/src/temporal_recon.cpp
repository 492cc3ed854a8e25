#include "hyperest/temporal_recon.hpp"

#include <algorithm>
#include <cmath>
#include <regex>

#include <Eigen/SVD>

#include "hyperest/errors.hpp"
#include "hyperest/quadrature.hpp"

namespace hyperest {

std::string to_string(DerivativeMode mode) {
  switch (mode) {
    case DerivativeMode::exact_callable: return "exact_callable";
    case DerivativeMode::directional: return "directional";
    case DerivativeMode::backward_fd: return "backward_fd";
  }
  return "unknown";
}

void ReconSpec::validate() const {
  if (p < 0) throw UnsupportedError("reconstruction needs p >= 0");
  if (d < 0 || d > 1) throw UnsupportedError("reconstruction supports d in {0, 1}, got " + std::to_string(d));
  if (r < -1 || r > 1) throw UnsupportedError("reconstruction supports r in {-1, 0, 1}, got " + std::to_string(r));
  if (d == 1 && p != 0) throw UnsupportedError("second-derivative reconstructions need p = 0, got " + label());
  if (degree() > 7) throw UnsupportedError("reconstruction degree " + std::to_string(degree()) + " above 7");
}

std::string ReconSpec::label() const {
  return "H(" + std::to_string(p) + "," + std::to_string(d) + "," + std::to_string(r) + ")";
}

ReconSpec parse_recon(const std::string& text) {
  static const std::regex pattern(R"(^\s*H\s*\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(-?\d+)\s*\)\s*$)");
  std::smatch m;
  if (!std::regex_match(text, m, pattern)) throw ConfigError("cannot parse reconstruction '" + text + "'");
  ReconSpec spec;
  spec.p = std::stoi(m[1]);
  spec.d = std::stoi(m[2]);
  spec.r = std::stoi(m[3]);
  return spec;
}

Vector f2_directional(const Rhs& f, double t, const Vector& u, double tau) {
  if (!(tau > 0)) throw DomainError("f2_directional needs tau > 0");
  const double e = tau * tau;
  const Vector fu = f(t, u);
  const Vector dt = (f(t + e, u) - f(t - e, u)) / (2 * e);
  const Vector du = (f(t, u + e * fu) - f(t, u - e * fu)) / (2 * e);
  return dt + du;
}

namespace {

constexpr double kStencil[5] = {25.0 / 12.0, -4.0, 3.0, -4.0 / 3.0, 0.25};

void check_history(std::span<const Vector> history, double tau) {
  if (history.size() < 5) throw StartupError("finite-difference stencil needs 5 values, got " + std::to_string(history.size()));
  if (!(tau > 0)) throw DomainError("finite-difference stencil needs tau > 0");
}

}  // namespace

Vector f2_backward_fd(std::span<const Vector> history, double tau) {
  check_history(history, tau);
  const std::size_t last = history.size() - 1;
  Vector out = kStencil[0] * history[last];
  for (int k = 1; k < 5; ++k) out += kStencil[k] * history[last - k];
  return out / tau;
}

Vector f2_forward_fd(std::span<const Vector> history, double tau) {
  check_history(history, tau);
  Vector out = -kStencil[0] * history[0];
  for (int k = 1; k < 5; ++k) out -= kStencil[k] * history[k];
  return out / tau;
}

TemporalPoly::TemporalPoly(std::vector<double> breakpoints, std::vector<Piece> pieces)
    : breaks_(std::move(breakpoints)), pieces_(std::move(pieces)) {
  if (breaks_.size() != pieces_.size() + 1 || pieces_.empty()) {
    throw UnsupportedError("temporal polynomial needs one piece per interval");
  }
}

int TemporalPoly::locate(double t) const {
  const double slack = 1e-12 * std::max(1.0, std::abs(end()) + std::abs(start()));
  if (t < start() - slack || t > end() + slack) {
    throw DomainError("time " + std::to_string(t) + " outside [" + std::to_string(start()) + ", " +
                      std::to_string(end()) + "]");
  }
  auto it = std::lower_bound(breaks_.begin() + 1, breaks_.end(), t);
  const int n = static_cast<int>(it - breaks_.begin()) - 1;
  return std::clamp(n, 0, intervals() - 1);
}

std::pair<Vector, Vector> TemporalPoly::eval_on(int interval, double t) const {
  const Piece& pc = pieces_[interval];
  auto [v, dv] = pc.form.value_and_derivative((t - pc.anchor) / pc.scale);
  dv /= pc.scale;
  return {std::move(v), std::move(dv)};
}

std::pair<Vector, Vector> TemporalPoly::value_and_derivative(double t) const { return eval_on(locate(t), t); }

Vector TemporalPoly::value(double t) const {
  const Piece& pc = pieces_[locate(t)];
  return pc.form.value((t - pc.anchor) / pc.scale);
}

Vector TemporalPoly::derivative(double t) const { return value_and_derivative(t).second; }

TemporalPoly::Piece hermite_interval(const std::vector<std::pair<double, std::vector<Vector>>>& conditions,
                                     double anchor, double scale) {
  if (!(scale > 0)) throw ConditioningError("hermite interval with nonpositive scale");
  std::vector<HermiteNode<double, Vector>> data;
  data.reserve(conditions.size());
  for (const auto& [time, derivs] : conditions) {
    HermiteNode<double, Vector> node{(time - anchor) / scale, {}};
    double factor = 1.0;
    for (const Vector& dk : derivs) {
      node.derivatives.push_back(dk * factor);
      factor *= scale;
    }
    data.push_back(std::move(node));
  }
  return {anchor, scale, hermite_newton(data)};
}

TemporalPoly reconstruct(const Trajectory& traj, const ReconSpec& spec, const Rhs& f,
                         const SecondDerivative& exact_f2) {
  spec.validate();
  const int steps = traj.steps();
  if (steps < spec.p + 1) {
    throw StartupError("reconstruction " + spec.label() + " needs at least " + std::to_string(spec.p + 1) +
                       " steps, trajectory has " + std::to_string(steps));
  }
  if (traj.f_values.size() != traj.times.size()) throw StartupError("trajectory lacks cached f values");

  std::vector<Vector> f2;
  if (spec.needs_second_derivative()) {
    f2.resize(steps + 1);
    switch (spec.mode) {
      case DerivativeMode::exact_callable:
        if (!exact_f2) throw ConfigError("exact_callable mode without a second-derivative callable");
        for (int j = 0; j <= steps; ++j) f2[j] = exact_f2(traj.times[j], traj.states[j]);
        break;
      case DerivativeMode::directional:
        if (!f) throw ConfigError("directional mode needs the right-hand side");
        for (int j = 0; j <= steps; ++j) {
          const double tau = traj.times[std::min(j + 1, steps)] - traj.times[std::max(j - 1, 0)];
          f2[j] = f2_directional(f, traj.times[j], traj.states[j], j == 0 || j == steps ? tau : tau / 2);
        }
        break;
      case DerivativeMode::backward_fd: {
        if (steps < 7) throw StartupError("backward_fd mode needs at least 7 steps for start-up");
        const double tau = traj.tau();
        std::span<const Vector> fv(traj.f_values);
        for (int j = 0; j <= steps; ++j) {
          f2[j] = j >= 4 ? f2_backward_fd(fv.subspan(j - 4, 5), tau) : f2_forward_fd(fv.subspan(j, 5), tau);
        }
        break;
      }
    }
  }

  auto conditions_at = [&](int j, int count) {
    std::vector<Vector> out;
    out.push_back(traj.states[j]);
    if (count > 1) out.push_back(traj.f_values[j]);
    if (count > 2) out.push_back(f2[j]);
    return std::make_pair(traj.times[j], std::move(out));
  };

  std::vector<TemporalPoly::Piece> pieces;
  pieces.reserve(steps);
  for (int n = 0; n < steps; ++n) {
    const int a = std::max(n, spec.p);
    std::vector<std::pair<double, std::vector<Vector>>> conds;
    for (int j = a - spec.p; j <= a; ++j) conds.push_back(conditions_at(j, spec.d + 2));
    conds.push_back(conditions_at(a + 1, spec.r + 2));
    pieces.push_back(hermite_interval(conds, traj.times[n], traj.times[n + 1] - traj.times[n]));
  }
  return TemporalPoly(traj.times, std::move(pieces));
}

namespace {

Vector residual_on(const TemporalPoly& recon, int interval, double t, const Rhs& f, ResidualSign sign) {
  auto [v, dv] = recon.eval_on(interval, t);
  return sign == ResidualSign::ode ? Vector(dv - f(t, v)) : Vector(dv + f(t, v));
}

}  // namespace

std::function<Vector(double)> temporal_residual(const TemporalPoly& recon, const Rhs& f, ResidualSign sign) {
  return [recon, f, sign](double t) { return residual_on(recon, recon.locate(t), t, f, sign); };
}

ResidualNorms residual_norms(const TemporalPoly& recon, const Rhs& f, ResidualSign sign, int quad_points,
                             int sup_samples) {
  const int npts = quad_points > 0 ? quad_points : std::min(recon.degree() + 2, kMaxGaussPoints);
  const auto& rule = cached_gauss_rule(npts);
  const int samples = std::max(sup_samples, 2);
  ResidualNorms out;
  double l2sq = 0.0;
  for (int n = 0; n < recon.intervals(); ++n) {
    const double a = recon.breakpoints()[n];
    const double b = recon.breakpoints()[n + 1];
    const double half = 0.5 * (b - a);
    for (int i = 0; i < rule.size(); ++i) {
      const double t = a + half * (rule.points[i] + 1.0);
      const double norm = residual_on(recon, n, t, f, sign).norm();
      out.l1 += half * rule.weights[i] * norm;
      l2sq += half * rule.weights[i] * norm * norm;
      out.linf = std::max(out.linf, norm);
    }
    for (int i = 0; i < samples; ++i) {
      const double t = a + (b - a) * i / (samples - 1);
      out.linf = std::max(out.linf, residual_on(recon, n, t, f, sign).norm());
    }
  }
  out.l2 = std::sqrt(l2sq);
  return out;
}

OdeBoundReport ode_error_bound(double residual_l1, double residual_l2, double lipschitz, double horizon,
                               double initial_error) {
  if (!(lipschitz > 0) || !(horizon > 0)) throw DomainError("ode_error_bound needs L > 0 and T > 0");
  OdeBoundReport rep;
  rep.lipschitz = lipschitz;
  rep.residual_l1 = residual_l1;
  rep.residual_l2 = residual_l2;
  rep.initial_error = initial_error;
  rep.horizon = horizon;
  rep.bound_linf = (initial_error + residual_l1) * std::exp(lipschitz * horizon);
  rep.bound_l2 = std::sqrt((initial_error * initial_error + residual_l2 * residual_l2) *
                           std::exp((lipschitz + 1.0) * horizon));
  return rep;
}

double sampled_lipschitz(const Rhs& f, const Trajectory& traj, double safety) {
  double best = 0.0;
  for (std::size_t j = 0; j < traj.states.size(); ++j) {
    const Vector& u = traj.states[j];
    const double t = traj.times[j];
    const int n = static_cast<int>(u.size());
    Eigen::MatrixXd jac(n, n);
    for (int c = 0; c < n; ++c) {
      const double e = 1e-6 * std::max(1.0, std::abs(u[c]));
      Vector up = u, um = u;
      up[c] += e;
      um[c] -= e;
      jac.col(c) = (f(t, up) - f(t, um)) / (2 * e);
    }
    const double norm = n == 1 ? std::abs(jac(0, 0)) : Eigen::JacobiSVD<Eigen::MatrixXd>(jac).singularValues()(0);
    best = std::max(best, norm);
  }
  return safety * best;
}

}  // namespace hyperest
