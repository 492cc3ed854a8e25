#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "hyperest/errors.hpp"

namespace hyperest {

/// Interpolation data at one node: derivatives[k] is the prescribed k-th derivative.
template <typename Scalar, typename Value>
struct HermiteNode {
  Scalar position;
  std::vector<Value> derivatives;
};

/// p(s) = c_0 + (s - z_0)(c_1 + (s - z_1)(c_2 + ...)) with confluent nodes z_j.
template <typename Scalar, typename Value>
struct NewtonForm {
  std::vector<Scalar> nodes;
  std::vector<Value> coeffs;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }

  Value value(Scalar s) const {
    Value p = coeffs.back();
    for (int j = degree() - 1; j >= 0; --j) p = coeffs[j] + (s - nodes[j]) * p;
    return p;
  }

  /// Value and first derivative in one Horner sweep.
  std::pair<Value, Value> value_and_derivative(Scalar s) const {
    Value p = coeffs.back();
    Value dp = p * Scalar(0);
    for (int j = degree() - 1; j >= 0; --j) {
      dp = p + (s - nodes[j]) * dp;
      p = coeffs[j] + (s - nodes[j]) * p;
    }
    return {std::move(p), std::move(dp)};
  }
};

/// Newton coefficients of the Hermite interpolant through `data`. Node k with
/// n_k prescribed derivatives is repeated n_k times; a run of j+1 equal nodes
/// takes the divided difference f^(j) / j!, otherwise the usual recursion.
template <typename Scalar, typename Value>
NewtonForm<Scalar, Value> hermite_newton(const std::vector<HermiteNode<Scalar, Value>>& data,
                                         Scalar min_separation = Scalar(1e-14)) {
  NewtonForm<Scalar, Value> form;
  std::vector<int> group;
  for (std::size_t g = 0; g < data.size(); ++g) {
    if (data[g].derivatives.empty()) throw UnsupportedError("hermite node without data");
    for (std::size_t h = 0; h < g; ++h) {
      if (std::abs(data[g].position - data[h].position) < min_separation) {
        throw ConditioningError("hermite interpolation: nodes closer than " + std::to_string(double(min_separation)));
      }
    }
    for (std::size_t k = 0; k < data[g].derivatives.size(); ++k) {
      form.nodes.push_back(data[g].position);
      group.push_back(static_cast<int>(g));
    }
  }
  const int n = static_cast<int>(form.nodes.size());
  std::vector<Value> column;
  column.reserve(n);
  for (int i = 0; i < n; ++i) column.push_back(data[group[i]].derivatives[0]);
  form.coeffs.reserve(n);
  form.coeffs.push_back(column[0]);
  Scalar factorial = 1;
  for (int level = 1; level < n; ++level) {
    factorial *= Scalar(level);
    for (int i = 0; i + level < n; ++i) {
      if (group[i] == group[i + level]) {
        column[i] = data[group[i]].derivatives[level] / factorial;
      } else {
        column[i] = (column[i + 1] - column[i]) / (form.nodes[i + level] - form.nodes[i]);
      }
    }
    form.coeffs.push_back(column[0]);
  }
  return form;
}

/// Divided difference over all nodes in `data` (with multiplicities).
template <typename Scalar, typename Value>
Value divided_difference(const std::vector<HermiteNode<Scalar, Value>>& data) {
  return hermite_newton(data).coeffs.back();
}

}  // namespace hyperest
