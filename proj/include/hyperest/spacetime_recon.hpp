#pragma once

#include <memory>
#include <vector>

#include "hyperest/dg_function.hpp"
#include "hyperest/dg_operator.hpp"
#include "hyperest/numerical_flux.hpp"
#include "hyperest/temporal_recon.hpp"

namespace hyperest {

/// Continuous degree-(q+1) reconstruction of `uh`: the first q Legendre modes
/// per cell are copied and the last two are fixed by w at both cell ends.
DGFunction spatial_reconstruct(const ConservationLaw& law, const FluxSpec& spec, const DGFunction& uh);

/// Applies the same reconstruction given precomputed interface values w_i.
DGFunction spatial_reconstruct_from(const DGFunction& uh, const std::vector<State>& w);

/// Initial data compatible with the reconstruction: the L2 projection of `u`
/// with the top mode per cell replaced so that w(u_h^-, u_h^+) = u(x_i) at
/// every interface. The spatial reconstruction of the result then interpolates
/// u at the nodes and matches its first q moments. Solved by Newton's method on
/// the cyclic block-bidiagonal system. Throws UnsupportedError when w is the
/// plain trace average (the system is singular), ConditioningError when Newton
/// does not converge.
DGFunction reconstruction_projection(const ConservationLaw& law, const FluxSpec& spec, MeshPtr mesh, int degree,
                                     const StateFunction& u, int quad_points);

/// Whether reconstruction_projection is well posed for this flux.
bool reconstruction_projection_supported(const FluxSpec& spec);

/// Componentwise extremes of sampled states (in the law's box coordinates)
/// with the sample locations.
struct StateRange {
  State lower;
  State upper;
  std::vector<double> lower_t, lower_x, upper_t, upper_x;

  bool empty() const { return lower.size() == 0; }
  void include(const State& u, double t, double x);
  void merge(const StateRange& other);
};

struct SpaceTimeSnapshot {
  double t = 0.0;
  DGFunction ut;    ///< temporal reconstruction, degree q
  DGFunction dut;   ///< its time derivative
  DGFunction ust;   ///< space-time reconstruction, degree q+1
  DGFunction dust;  ///< its time derivative
};

/// Space-time reconstruction evaluated lazily at requested times.
class SpaceTimeRecon {
 public:
  SpaceTimeRecon(LawPtr law, FluxSpec flux, MeshPtr mesh, int degree, std::shared_ptr<const TemporalPoly> recon);

  const ConservationLaw& law() const { return *law_; }
  const LawPtr& law_ptr() const { return law_; }
  const FluxSpec& flux() const { return flux_; }
  const MeshPtr& mesh() const { return mesh_; }
  int degree() const { return degree_; }
  int dim() const { return law_->dim(); }
  const TemporalPoly& temporal() const { return *recon_; }
  int slabs() const { return recon_->intervals(); }

  SpaceTimeSnapshot at(double t) const;
  /// Uses the time polynomial of `slab` (one-sided at its ends).
  SpaceTimeSnapshot at_on(int slab, double t) const;
  /// Only the reconstructions, without time derivatives.
  DGFunction ust(double t) const;

 private:
  LawPtr law_;
  FluxSpec flux_;
  MeshPtr mesh_;
  int degree_;
  std::shared_ptr<const TemporalPoly> recon_;
};

struct ResidualOptions {
  /// Gauss points per slab in time and per cell in space (0: q+3).
  int time_points = 0;
  int space_points = 0;
  /// Equispaced samples per cell for the sup of the x-derivative (0: q+4).
  int sup_samples = 0;
};

/// Pointwise space-time residual and its per-slab norms.
///   R^st = d_t ust + d_x g(ust),  R^t = d_t ut + f(ut),  R^s = R^st - R^t.
class ResidualField {
 public:
  explicit ResidualField(SpaceTimeRecon recon, ResidualOptions options = {});

  const SpaceTimeRecon& recon() const { return recon_; }

  struct Split {
    State rst;
    State rs;
    State rt;
  };

  /// R^st at (t, x).
  State evaluate(double t, double x) const;
  /// All three residuals; R^s uses its own formula, not the difference.
  Split split(double t, double x) const;

  int slabs() const { return static_cast<int>(slab_l2sq_.size()); }
  /// ||R^st||^2 over slab n times the whole domain.
  double slab_l2_squared(int n) const { return slab_l2sq_[n]; }
  /// max of |d_x ust| (Euclidean over components) sampled on slab n.
  double sup_dx(int n) const { return sup_dx_[n]; }
  const std::vector<double>& slab_l2_squared() const { return slab_l2sq_; }
  const std::vector<double>& sup_dx() const { return sup_dx_; }
  /// Range of ust over all residual and sup sampling points.
  const StateRange& range() const { return range_; }

 private:
  SpaceTimeRecon recon_;
  std::vector<double> slab_l2sq_;
  std::vector<double> sup_dx_;
  StateRange range_;
};

/// Range of ust at Gauss times per slab, on Gauss points and equispaced
/// points (cell ends included) per cell. Zero counts select q+3 and q+4.
StateRange sample_range(const SpaceTimeRecon& recon, int time_points = 0, int space_samples = 0);

/// ||R^st||_{L2((0, t_end) x domain)}; t_end must be a breakpoint.
double residual_l2(const ResidualField& field, double t_end);

/// R^st on a DG snapshot pair at the reference point xi of `cell`.
State spacetime_residual_at(const ConservationLaw& law, const DGFunction& ust, const DGFunction& dust, int cell,
                            double xi);

}  // namespace hyperest
