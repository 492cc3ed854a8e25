#include "hyperest/estimator.hpp"

#include <algorithm>
#include <cmath>

#include "hyperest/errors.hpp"

namespace hyperest {

double estimator_bound(const EntropyConstants& k, double recon_gap_sq, double residual_sq, double init_sq,
                       double exp_factor) {
  return 2.0 * recon_gap_sq + 2.0 / k.c_eta_lower * (residual_sq + k.c_eta_upper * init_sq) * exp_factor;
}

namespace {

int node_index(const std::vector<double>& times, double t) {
  const double tol = 1e-9 * std::max(1.0, std::abs(t));
  for (std::size_t n = 0; n < times.size(); ++n) {
    if (std::abs(times[n] - t) <= tol) return static_cast<int>(n);
  }
  throw DomainError("checkpoint " + std::to_string(t) + " is not a time node");
}

}  // namespace

double exp_factor(const EntropyConstants& k, const std::vector<double>& times, const std::vector<double>& slab_sup_dx,
                  double t_end) {
  const int last = node_index(times, t_end);
  const int slabs = static_cast<int>(slab_sup_dx.size());
  auto integrand = [&](int node) {
    double sup = 0.0;
    if (node > 0) sup = slab_sup_dx[node - 1];
    if (node < slabs) sup = std::max(sup, slab_sup_dx[node]);
    return (k.c_eta_upper * k.c_g * sup + k.c_eta_upper * k.c_eta_upper) / k.c_eta_lower;
  };
  double integral = 0.0;
  for (int n = 0; n < last; ++n) integral += 0.5 * (times[n + 1] - times[n]) * (integrand(n) + integrand(n + 1));
  return std::exp(integral);
}

EstimatorReport error_estimate(const EstimatorInputs& in, const std::vector<double>& checkpoints,
                               const std::vector<double>& recon_gap_sq, const BoxCheck& box, bool force) {
  if (checkpoints.size() != recon_gap_sq.size()) throw DomainError("one reconstruction gap per checkpoint required");
  if (!box.ok && !force) {
    throw AssumptionViolation("reconstruction leaves the compact box at t=" + std::to_string(box.t) +
                              ", x=" + std::to_string(box.x) + ", component " + std::to_string(box.component));
  }
  EstimatorReport rep;
  rep.constants = in.constants;
  rep.box = box;
  rep.forced = !box.ok;
  for (std::size_t i = 0; i < checkpoints.size(); ++i) {
    CheckpointEstimate row;
    row.t = checkpoints[i];
    const int last = node_index(in.times, row.t);
    for (int n = 0; n < last; ++n) row.residual_sq += in.slab_residual_sq[n];
    row.recon_gap_sq = recon_gap_sq[i];
    row.init_sq = in.init_sq;
    row.exp_factor = exp_factor(in.constants, in.times, in.slab_sup_dx, row.t);
    row.bound = estimator_bound(in.constants, row.recon_gap_sq, row.residual_sq, row.init_sq, row.exp_factor);
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace hyperest
