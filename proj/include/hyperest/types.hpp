#pragma once

#include <Eigen/Dense>

namespace hyperest {

/// Systems handled here have at most three conserved quantities (1D Euler).
/// Fixed max-size storage keeps point-wise state arithmetic off the heap.
inline constexpr int kMaxSystemDim = 3;

template <typename Scalar>
using StateT = Eigen::Matrix<Scalar, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxSystemDim, 1>;

template <typename Scalar>
using StateMatrixT = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor,
                                  kMaxSystemDim, kMaxSystemDim>;

using State = StateT<double>;
using StateMatrix = StateMatrixT<double>;

/// Flat coefficient vectors: ODE states, DG coefficient arrays.
using Vector = Eigen::VectorXd;

}  // namespace hyperest
