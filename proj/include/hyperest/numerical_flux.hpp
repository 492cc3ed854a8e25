#pragma once

#include <string>

#include "hyperest/conservation_law.hpp"

namespace hyperest {

enum class FluxKind {
  /// G = g(w), w = (a+b)/2 - lambda/2 (g(b) - g(a))  (Lax-Wendroff / Richtmyer)
  central_w,
  /// G = (g(a)+g(b))/2 - lambda (b-a), w = (a+b)/2
  llf,
  /// G = g(w) - mu |b-a|^nu (b-a), w as for central_w
  richtmyer_visc,
  /// G = g(c) + |A(c)|(a-b)/2, c = (a+b)/2, w = c
  roe_avg,
  /// Roe flux as above, w upwinds the characteristic variables with a smooth switch
  roe_char,
};

std::string to_string(FluxKind kind);
FluxKind parse_flux_kind(const std::string& name);

/// Numerical flux descriptor. `lambda` is tau/h for the Lax-Wendroff-type
/// intermediate state and the fixed coefficient of llf when `local_speed` is off.
struct FluxSpec {
  FluxKind kind = FluxKind::richtmyer_visc;
  double lambda = 0.0;
  double mu = 0.0;
  int nu = 1;
  /// llf: use half the local maximal wave speed instead of `lambda`.
  bool local_speed = false;
  /// roe_char: the switch uses chi(z / (chi_width * h_i)).
  double chi_width = 1.0;

  /// Exponent of h in the viscosity part of the flux (0 for type (i) fluxes
  /// without viscosity, since then there is nothing to scale).
  int viscosity_order() const;
};

/// Quintic smoothstep: 0 for z <= -h, 1 for z >= h, C2 in between.
double chi_smooth(double z, double h);
double chi_smooth_derivative(double z, double h);

/// Intermediate state w(a, b). `h` is the local mesh width at the interface.
State flux_w(const ConservationLaw& law, const FluxSpec& spec, const State& a, const State& b, double h);

/// d/dt w(a(t), b(t)) given the rates of both traces.
State flux_w_rate(const ConservationLaw& law, const FluxSpec& spec, const State& a, const State& b,
                  const State& a_rate, const State& b_rate, double h);

State numerical_flux(const ConservationLaw& law, const FluxSpec& spec, const State& a, const State& b, double h);

}  // namespace hyperest
