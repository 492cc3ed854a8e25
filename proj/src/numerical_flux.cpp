#include "hyperest/numerical_flux.hpp"

#include <algorithm>
#include <cmath>

#include "hyperest/errors.hpp"

namespace hyperest {

std::string to_string(FluxKind kind) {
  switch (kind) {
    case FluxKind::central_w: return "central_w";
    case FluxKind::llf: return "llf";
    case FluxKind::richtmyer_visc: return "richtmyer_visc";
    case FluxKind::roe_avg: return "roe_avg";
    case FluxKind::roe_char: return "roe_char";
  }
  return "unknown";
}

FluxKind parse_flux_kind(const std::string& name) {
  for (auto kind : {FluxKind::central_w, FluxKind::llf, FluxKind::richtmyer_visc, FluxKind::roe_avg,
                    FluxKind::roe_char}) {
    if (to_string(kind) == name) return kind;
  }
  throw ConfigError("unknown flux kind '" + name + "'");
}

int FluxSpec::viscosity_order() const {
  switch (kind) {
    case FluxKind::central_w: return 0;
    case FluxKind::richtmyer_visc: return nu;
    case FluxKind::llf:
    case FluxKind::roe_avg: return 0;
    case FluxKind::roe_char: return 1;
  }
  return 0;
}

double chi_smooth(double z, double h) {
  const double s = 0.5 * (z / h + 1.0);
  if (s <= 0.0) return 0.0;
  if (s >= 1.0) return 1.0;
  return s * s * s * (s * (6.0 * s - 15.0) + 10.0);
}

double chi_smooth_derivative(double z, double h) {
  const double s = 0.5 * (z / h + 1.0);
  if (s <= 0.0 || s >= 1.0) return 0.0;
  return 30.0 * s * s * (s - 1.0) * (s - 1.0) * 0.5 / h;
}

namespace {

void require_admissible(const ConservationLaw& law, const State& a, const State& b) {
  if (!law.admissible(a) || !law.admissible(b)) {
    throw StateSpaceError("numerical flux: inadmissible trace state", std::numeric_limits<double>::quiet_NaN());
  }
}

State characteristic_upwind(const ConservationLaw& law, const FluxSpec& spec, const State& a, const State& b,
                            double h) {
  const State c = 0.5 * (a + b);
  const EigenSystem es = law.eigensystem(c);
  const State alpha = es.left * a;
  const State beta = es.left * b;
  State omega(a.size());
  for (int i = 0; i < a.size(); ++i) {
    const double chi = chi_smooth(es.values[i], spec.chi_width * h);
    omega[i] = chi * alpha[i] + (1.0 - chi) * beta[i];
  }
  return es.right * omega;
}

}  // namespace

State flux_w(const ConservationLaw& law, const FluxSpec& spec, const State& a, const State& b, double h) {
  require_admissible(law, a, b);
  switch (spec.kind) {
    case FluxKind::central_w:
    case FluxKind::richtmyer_visc:
      return 0.5 * (a + b) - 0.5 * spec.lambda * (law.flux(b) - law.flux(a));
    case FluxKind::llf:
    case FluxKind::roe_avg:
      return 0.5 * (a + b);
    case FluxKind::roe_char:
      return characteristic_upwind(law, spec, a, b, h);
  }
  return 0.5 * (a + b);
}

State flux_w_rate(const ConservationLaw& law, const FluxSpec& spec, const State& a, const State& b,
                  const State& a_rate, const State& b_rate, double h) {
  switch (spec.kind) {
    case FluxKind::central_w:
    case FluxKind::richtmyer_visc:
      return 0.5 * (a_rate + b_rate) - 0.5 * spec.lambda * (law.jacobian(b) * b_rate - law.jacobian(a) * a_rate);
    case FluxKind::llf:
    case FluxKind::roe_avg:
      return 0.5 * (a_rate + b_rate);
    case FluxKind::roe_char: {
      // Eigen-data depends on the average state; differentiate along the
      // trace path by central differences.
      const double scale = std::max({1.0, a.norm(), b.norm()});
      const double rate = std::max(a_rate.norm(), b_rate.norm());
      if (rate == 0.0) return State::Zero(a.size());
      const double eps = 1e-5 * scale / rate;
      const State wp = characteristic_upwind(law, spec, a + eps * a_rate, b + eps * b_rate, h);
      const State wm = characteristic_upwind(law, spec, a - eps * a_rate, b - eps * b_rate, h);
      return (wp - wm) / (2.0 * eps);
    }
  }
  return State::Zero(a.size());
}

State numerical_flux(const ConservationLaw& law, const FluxSpec& spec, const State& a, const State& b, double h) {
  require_admissible(law, a, b);
  switch (spec.kind) {
    case FluxKind::central_w:
      return law.flux(flux_w(law, spec, a, b, h));
    case FluxKind::richtmyer_visc: {
      const State diff = b - a;
      const double norm = diff.norm();
      const double visc = spec.nu == 0 ? spec.mu : spec.mu * std::pow(norm, spec.nu);
      return law.flux(flux_w(law, spec, a, b, h)) - visc * diff;
    }
    case FluxKind::llf: {
      const double lambda =
          spec.local_speed ? 0.5 * std::max(law.max_speed(a), law.max_speed(b)) : spec.lambda;
      return 0.5 * (law.flux(a) + law.flux(b)) - lambda * (b - a);
    }
    case FluxKind::roe_avg:
    case FluxKind::roe_char: {
      const State c = 0.5 * (a + b);
      const EigenSystem es = law.eigensystem(c);
      const State abs_a_diff = es.right * (es.values.cwiseAbs().asDiagonal() * (es.left * (a - b)));
      return law.flux(c) + 0.5 * abs_a_diff;
    }
  }
  return law.flux(a);
}

}  // namespace hyperest
