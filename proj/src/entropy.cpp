#include "hyperest/entropy.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "hyperest/errors.hpp"

namespace hyperest {

namespace {

struct Primitive {
  double rho;
  double vel;
  double p;
};

Primitive primitive(const State& u, double gamma) {
  const double rho = u[0];
  const double vel = u[1] / rho;
  return {rho, vel, (gamma - 1.0) * (u[2] - 0.5 * rho * vel * vel)};
}

}  // namespace

double EulerEntropy::physical_entropy(const State& u) const {
  const Primitive w = primitive(u, gamma_);
  return std::log(w.p) - gamma_ * std::log(w.rho);
}

double EulerEntropy::entropy(const State& u) const { return -u[0] * physical_entropy(u) / (gamma_ - 1.0); }

double EulerEntropy::entropy_flux(const State& u) const { return u[1] / u[0] * entropy(u); }

State EulerEntropy::gradient(const State& u) const {
  const Primitive w = primitive(u, gamma_);
  const double s = physical_entropy(u);
  State v(3);
  v << (gamma_ - s) / (gamma_ - 1.0) - 0.5 * w.rho * w.vel * w.vel / w.p, w.rho * w.vel / w.p, -w.rho / w.p;
  return v;
}

StateMatrix EulerEntropy::hessian(const State& u) const {
  const Primitive w = primitive(u, gamma_);
  const double g1 = gamma_ - 1.0;
  const double rho = w.rho, vel = w.vel, p = w.p;
  // d(entropy variables) / d(rho, vel, p)
  StateMatrix dv(3, 3);
  dv << gamma_ / (rho * g1) - 0.5 * vel * vel / p, -rho * vel / p, -1.0 / (p * g1) + 0.5 * rho * vel * vel / (p * p),
      vel / p, rho / p, -rho * vel / (p * p),
      -1.0 / p, 0.0, rho / (p * p);
  // d(rho, vel, p) / d(conservative)
  StateMatrix dw(3, 3);
  dw << 1.0, 0.0, 0.0,
      -vel / rho, 1.0 / rho, 0.0,
      g1 * 0.5 * vel * vel, -g1 * vel, g1;
  const StateMatrix h = dv * dw;
  return 0.5 * (h + h.transpose());
}

EntropyPtr builtin_entropy(const ConservationLaw& law) {
  if (const auto* adv = dynamic_cast<const LinearAdvection*>(&law)) {
    return std::make_shared<QuadraticEntropy>(adv->speed(), 0.0);
  }
  if (dynamic_cast<const Burgers*>(&law)) return std::make_shared<QuadraticEntropy>(0.0, 1.0);
  if (const auto* euler = dynamic_cast<const Euler*>(&law)) return std::make_shared<EulerEntropy>(euler->gamma());
  throw UnsupportedError("no built-in entropy pair for law '" + law.name() + "'");
}

bool CompactBox::contains(const State& u, double tol) const {
  for (int c = 0; c < dim(); ++c) {
    const double slack = tol * std::max(1.0, std::abs(upper[c]) + std::abs(lower[c]));
    if (u[c] < lower[c] - slack || u[c] > upper[c] + slack) return false;
  }
  return true;
}

CompactBox padded_box(const StateRange& range, double padding) {
  if (range.empty()) throw DomainError("padded_box: empty sample range");
  CompactBox box{range.lower, range.upper};
  for (int c = 0; c < box.dim(); ++c) {
    const double width = range.upper[c] - range.lower[c];
    const double mid = 0.5 * (range.upper[c] + range.lower[c]);
    const double pad = width > 1e-12 * std::max(1.0, std::abs(mid)) ? padding * width
                                                                    : padding * std::max(std::abs(mid), 1e-3);
    box.lower[c] -= pad;
    box.upper[c] += pad;
  }
  return box;
}

BoxCheck verify_in_box(const StateRange& range, const CompactBox& box, double tol) {
  BoxCheck out;
  if (range.empty()) return out;
  for (int c = 0; c < box.dim(); ++c) {
    const double slack = tol * std::max(1.0, std::abs(box.upper[c]) + std::abs(box.lower[c]));
    if (range.lower[c] < box.lower[c] - slack) {
      return {false, range.lower_t[c], range.lower_x[c], c, range.lower[c]};
    }
    if (range.upper[c] > box.upper[c] + slack) {
      return {false, range.upper_t[c], range.upper_x[c], c, range.upper[c]};
    }
  }
  return out;
}

BoxCheck verify_in_box(const SpaceTimeRecon& recon, const CompactBox& box, int time_points, int space_samples,
                       double tol) {
  return verify_in_box(sample_range(recon, time_points, space_samples), box, tol);
}

EntropyConstants entropy_constants(const EntropyPair& pair, const ConservationLaw& law, const CompactBox& box,
                                   int resolution, double safety) {
  const int m = law.dim();
  if (box.dim() != m) throw DomainError("box dimension does not match the system");
  if (resolution < 2) throw DomainError("entropy_constants needs resolution >= 2");
  long total = 1;
  for (int c = 0; c < m; ++c) total *= resolution;

  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  double cg = 0.0;
  State v(m);
  for (long idx = 0; idx < total; ++idx) {
    long rest = idx;
    for (int c = 0; c < m; ++c) {
      const int k = static_cast<int>(rest % resolution);
      rest /= resolution;
      v[c] = box.lower[c] + (box.upper[c] - box.lower[c]) * k / (resolution - 1);
    }
    const State u = law.from_box_coordinates(v);
    if (!law.admissible(u)) throw DomainError("entropy_constants: box contains inadmissible states");
    const Eigen::SelfAdjointEigenSolver<StateMatrix> eig(pair.hessian(u), Eigen::EigenvaluesOnly);
    const double emin = eig.eigenvalues().minCoeff();
    if (!(emin > 0)) throw ConvexityError("entropy Hessian not positive definite in the box");
    lo = std::min(lo, emin);
    hi = std::max(hi, eig.eigenvalues().maxCoeff());
    double sum = 0.0;
    for (int i = 0; i < m; ++i) {
      const Eigen::SelfAdjointEigenSolver<StateMatrix> geig(law.flux_hessian(u, i), Eigen::EigenvaluesOnly);
      const double norm = geig.eigenvalues().cwiseAbs().maxCoeff();
      sum += norm * norm;
    }
    cg = std::max(cg, std::sqrt(sum));
  }
  return {lo / safety, hi * safety, cg * safety, resolution, safety};
}

}  // namespace hyperest
