#pragma once

#include <cmath>
#include <utility>

namespace hyperest {

/// Standard Legendre polynomial P_k and its derivative at xi in [-1, 1].
template <typename Scalar>
std::pair<Scalar, Scalar> legendre_eval(int k, Scalar xi) {
  if (k == 0) return {Scalar(1), Scalar(0)};
  Scalar p_prev = 1, p = xi;
  Scalar d_prev = 0, d = 1;
  for (int j = 1; j < k; ++j) {
    const Scalar p_next = (Scalar(2 * j + 1) * xi * p - Scalar(j) * p_prev) / Scalar(j + 1);
    const Scalar d_next = d_prev + Scalar(2 * j + 1) * p;
    p_prev = p;
    p = p_next;
    d_prev = d;
    d = d_next;
  }
  return {p, d};
}

/// Scale turning P_k into an L2-orthonormal function on a cell of width h.
template <typename Scalar>
Scalar legendre_scale(int k, Scalar h) {
  return std::sqrt(Scalar(2 * k + 1) / h);
}

}  // namespace hyperest
