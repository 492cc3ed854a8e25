#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "hyperest/errors.hpp"
#include "hyperest/legendre.hpp"

namespace hyperest {

/// Gauss-Legendre rule on the reference interval [-1, 1].
template <typename Scalar = double>
struct QuadratureRule {
  std::vector<Scalar> points;
  std::vector<Scalar> weights;

  int size() const { return static_cast<int>(points.size()); }
};

inline constexpr int kMaxGaussPoints = 20;

/// n-point Gauss rule, exact for polynomials of degree <= 2n-1.
/// Nodes are Legendre roots found by Newton iteration from the Chebyshev guess.
template <typename Scalar = double>
QuadratureRule<Scalar> gauss_rule(int n) {
  if (n < 1 || n > kMaxGaussPoints) {
    throw UnsupportedError("gauss_rule: unsupported point count " + std::to_string(n));
  }
  QuadratureRule<Scalar> rule;
  rule.points.resize(n);
  rule.weights.resize(n);
  const Scalar pi = std::numbers::pi_v<Scalar>;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    Scalar x = std::cos(pi * (Scalar(i) + Scalar(0.75)) / (Scalar(n) + Scalar(0.5)));
    Scalar dp = 0;
    for (int iter = 0; iter < 100; ++iter) {
      const auto [p, d] = legendre_eval<Scalar>(n, x);
      dp = d;
      const Scalar dx = p / d;
      x -= dx;
      if (std::abs(dx) < Scalar(4) * std::numeric_limits<Scalar>::epsilon()) break;
    }
    dp = legendre_eval<Scalar>(n, x).second;
    const Scalar w = Scalar(2) / ((Scalar(1) - x * x) * dp * dp);
    rule.points[i] = -x;
    rule.points[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.points[n / 2] = Scalar(0);
  return rule;
}

/// Cached double-precision rules, built once per point count.
const QuadratureRule<double>& cached_gauss_rule(int n);

}  // namespace hyperest
