#pragma once

#include <vector>

#include "hyperest/entropy.hpp"

namespace hyperest {

/// 2 gap^2 + 2/C_lo (residual^2 + C_hi init^2) exp_factor.
double estimator_bound(const EntropyConstants& k, double recon_gap_sq, double residual_sq, double init_sq,
                       double exp_factor);

/// exp(int_0^{t_end} (C_hi C_g |d_x ust|_inf + C_hi^2) / C_lo ds) by the
/// trapezoid rule on nodal values max(sup of slab n-1, sup of slab n).
/// `times` are the slab breakpoints, t_end must be one of them.
double exp_factor(const EntropyConstants& k, const std::vector<double>& times, const std::vector<double>& slab_sup_dx,
                  double t_end);

struct EstimatorInputs {
  EntropyConstants constants;
  std::vector<double> times;
  std::vector<double> slab_residual_sq;
  std::vector<double> slab_sup_dx;
  /// ||u_0 - ust(0)||^2
  double init_sq = 0.0;
};

struct CheckpointEstimate {
  double t = 0.0;
  double recon_gap_sq = 0.0;
  double residual_sq = 0.0;
  double init_sq = 0.0;
  double exp_factor = 1.0;
  double bound = 0.0;
};

struct EstimatorReport {
  EntropyConstants constants;
  std::vector<CheckpointEstimate> rows;
  BoxCheck box;
  /// The box check failed and the bound was produced anyway.
  bool forced = false;
};

/// One row per checkpoint; `recon_gap_sq[i]` is ||ust(t_i) - u_h(t_i)||^2.
/// Throws AssumptionViolation when the box check failed unless `force`.
EstimatorReport error_estimate(const EstimatorInputs& in, const std::vector<double>& checkpoints,
                               const std::vector<double>& recon_gap_sq, const BoxCheck& box, bool force = false);

}  // namespace hyperest
