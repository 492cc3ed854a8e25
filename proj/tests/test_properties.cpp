#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <memory>

#include "generators.hpp"
#include "hyperest/dg_operator.hpp"
#include "hyperest/estimator.hpp"
#include "hyperest/hermite.hpp"
#include "hyperest/quadrature.hpp"
#include "hyperest/spacetime_recon.hpp"
#include "hyperest/temporal_recon.hpp"
#include "oracles.hpp"

using namespace hyperest;

namespace {

constexpr int kCases = 120;

const FluxKind kAllKinds[] = {FluxKind::central_w, FluxKind::llf, FluxKind::richtmyer_visc, FluxKind::roe_avg,
                              FluxKind::roe_char};

FluxSpec random_flux(gen::Gen& g) {
  FluxSpec f;
  f.kind = kAllKinds[g.integer(0, 4)];
  f.lambda = g.uniform(0.01, 0.2);
  f.mu = g.coin() ? 0.0 : g.uniform(0.0, 1.0);
  f.nu = g.integer(0, 2);
  f.local_speed = f.kind == FluxKind::llf && g.coin();
  return f;
}

/// Random law with a random DG state that is admissible for it.
struct LawCase {
  LawPtr law;
  DGFunction u;
};

LawCase random_case(gen::Gen& g, const MeshPtr& mesh, int degree) {
  switch (g.integer(0, 2)) {
    case 0: return {std::make_shared<const LinearAdvection>(g.uniform(-3.0, 3.0)), g.dg(mesh, degree, 1)};
    case 1: return {std::make_shared<const Burgers>(), g.dg(mesh, degree, 1)};
    default: {
      auto law = std::make_shared<const Euler>();
      return {law, g.euler_dg(mesh, degree, *law)};
    }
  }
}

std::shared_ptr<const TemporalPoly> linear_in_time(const Vector& c0, const Vector& rate, double tau, int steps) {
  std::vector<double> breaks;
  std::vector<TemporalPoly::Piece> pieces;
  for (int n = 0; n <= steps; ++n) breaks.push_back(n * tau);
  for (int n = 0; n < steps; ++n) {
    TemporalPoly::Piece p;
    p.anchor = n * tau;
    p.scale = tau;
    p.form.nodes = {0.0};
    p.form.coeffs = {Vector(c0 + n * tau * rate), Vector(tau * rate)};
    pieces.push_back(std::move(p));
  }
  return std::make_shared<const TemporalPoly>(std::move(breaks), std::move(pieces));
}

}  // namespace

TEST_CASE("property: Gauss rules integrate polynomials of degree 2n-1 exactly") {
  gen::Gen g(1001);
  for (int k = 0; k < kCases; ++k) {
    const int n = g.integer(1, kMaxGaussPoints);
    const int deg = g.integer(0, 2 * n - 1);
    std::vector<oracle::Real> c(deg + 1);
    oracle::Real exact = 0;
    for (int j = 0; j <= deg; ++j) {
      c[j] = g.uniform(-1.0, 1.0);
      exact += c[j] * oracle::monomial_integral(j);
    }
    const auto& rule = cached_gauss_rule(n);
    double sum = 0;
    for (int i = 0; i < n; ++i) sum += rule.weights[i] * double(oracle::poly_eval(c, rule.points[i]));
    INFO("n=" << n << " degree=" << deg);
    CHECK(std::abs(sum - double(exact)) < 1e-13 * (deg + 1));
  }
}

TEST_CASE("property: Newton-form divided differences match the textbook recursion") {
  gen::Gen g(1002);
  for (int k = 0; k < kCases; ++k) {
    const double a = g.uniform(-2.0, 2.0);
    const auto deriv = [a](oracle::Real t, int order) { return std::pow(oracle::Real(a), order) * std::exp(a * t); };
    std::vector<HermiteNode<double, double>> data;
    std::vector<oracle::Real> z;
    double pos = g.uniform(-1.0, 0.0);
    const int groups = g.integer(1, 4);
    for (int i = 0; i < groups; ++i) {
      const int mult = g.integer(1, 3);
      HermiteNode<double, double> node{pos, {}};
      for (int m = 0; m < mult; ++m) {
        node.derivatives.push_back(double(deriv(pos, m)));
        z.push_back(pos);
      }
      data.push_back(node);
      pos += g.uniform(0.2, 0.6);
    }
    const auto form = hermite_newton(data);
    double min_gap = 1.0, data_max = 0.0;
    for (std::size_t i = 1; i < data.size(); ++i) min_gap = std::min(min_gap, data[i].position - data[i - 1].position);
    for (const auto& d : data) {
      for (double v : d.derivatives) data_max = std::max(data_max, std::abs(v));
    }
    for (int level = 0; level < static_cast<int>(z.size()); ++level) {
      const double ref = double(oracle::divided_difference(z, deriv, 0, level));
      // roundoff in the data grows like min_gap^-level through the recursion
      const double tol = 1e-14 * data_max * std::pow(1.0 / min_gap, level) + 1e-12 * std::abs(ref);
      INFO("level " << level << " of " << z.size());
      CHECK(std::abs(form.coeffs[level] - ref) <= tol);
    }
  }
}

TEST_CASE("property: Hermite interpolant matches the confluent Vandermonde solution") {
  gen::Gen g(1003);
  for (int k = 0; k < kCases; ++k) {
    std::vector<std::pair<oracle::Real, std::vector<oracle::Real>>> odata;
    std::vector<std::pair<double, std::vector<Vector>>> conditions;
    const int nodes = g.integer(2, 4);
    double pos = 0.0;
    for (int i = 0; i < nodes; ++i) {
      const int mult = g.integer(1, 3);
      std::vector<oracle::Real> ders;
      std::vector<Vector> vders;
      for (int m = 0; m < mult; ++m) {
        const double v = g.uniform(-1.0, 1.0);
        ders.push_back(v);
        vders.push_back(Vector::Constant(1, v));
      }
      odata.emplace_back(pos, ders);
      conditions.emplace_back(pos, vders);
      pos += g.uniform(0.5, 1.0);
    }
    const double anchor = conditions.front().first;
    const double scale = g.uniform(0.5, 2.0);
    const auto piece = hermite_interval(conditions, anchor, scale);
    const auto coeffs = oracle::hermite_monomial(odata);
    for (int j = 0; j < 5; ++j) {
      const double t = g.uniform(0.0, pos);
      const auto [v, dv] = piece.form.value_and_derivative((t - anchor) / scale);
      CHECK(v[0] == doctest::Approx(double(oracle::poly_eval(coeffs, t))).epsilon(1e-9).scale(1e-8));
      CHECK(dv[0] / scale == doctest::Approx(double(oracle::poly_derivative(coeffs, t, 1))).epsilon(1e-8).scale(1e-7));
    }
  }
}

TEST_CASE("property: temporal reconstruction interpolates states and slopes at the time nodes") {
  gen::Gen g(1004);
  const StepperFamily steppers[] = {StepperFamily::rk1, StepperFamily::rk2_heun, StepperFamily::rk3_ssp,
                                    StepperFamily::rk4_classic};
  const char* specs[] = {"H(0,0,-1)", "H(0,0,0)", "H(1,0,0)", "H(2,0,0)", "H(0,1,0)", "H(0,1,1)"};
  for (int k = 0; k < kCases; ++k) {
    const double a = g.uniform(0.1, 2.0), b = g.uniform(-1.0, 1.0);
    const Rhs f = [a, b](double t, const Vector& u) { return Vector(-a * u.array().cube().matrix() + Vector::Constant(1, b * std::sin(t))); };
    const int steps = g.integer(3, 12);
    const Trajectory traj = evolve(f, Vector::Constant(1, g.uniform(-1.0, 1.0)), TimeGrid{0.0, g.uniform(0.01, 0.1), steps},
                                   steppers[g.integer(0, 3)]);
    const ReconSpec spec = parse_recon(specs[g.integer(0, 5)]);
    const TemporalPoly poly = reconstruct(traj, spec, f);
    INFO(spec.label() << " steps=" << steps);
    for (int n = 0; n <= steps; ++n) {
      const double t = traj.times[n];
      const int left = std::max(n - 1, 0);
      const auto [v, dv] = poly.eval_on(left, t);
      CHECK(v[0] == doctest::Approx(traj.states[n][0]).epsilon(1e-12).scale(1e-12));
      if (spec.r >= 0 || n < steps) {
        const auto right = poly.eval_on(std::min(n, steps - 1), t);
        CHECK(right.second[0] == doctest::Approx(traj.f_values[n][0]).epsilon(1e-10).scale(1e-10));
      }
      if (n > 0 && spec.r >= 0) CHECK(dv[0] == doctest::Approx(traj.f_values[n][0]).epsilon(1e-10).scale(1e-10));
    }
  }
}

TEST_CASE("property: numerical fluxes are consistent") {
  gen::Gen g(1005);
  const Euler euler;
  const Burgers burgers;
  for (int k = 0; k < kCases; ++k) {
    const FluxSpec spec = random_flux(g);
    const double h = g.uniform(0.01, 0.5);
    const State e = g.euler_state(euler);
    CHECK((flux_w(euler, spec, e, e, h) - e).norm() < 1e-12 * e.norm());
    CHECK((numerical_flux(euler, spec, e, e, h) - euler.flux(e)).norm() < 1e-12 * euler.flux(e).norm());
    const State s = State::Constant(1, g.uniform(-3.0, 3.0));
    const LinearAdvection adv(g.uniform(-5.0, 5.0));
    CHECK(std::abs(numerical_flux(burgers, spec, s, s, h)[0] - burgers.flux(s)[0]) < 1e-13 * (1 + s[0] * s[0]));
    CHECK(std::abs(numerical_flux(adv, spec, s, s, h)[0] - adv.flux(s)[0]) < 1e-13 * (1 + std::abs(adv.flux(s)[0])));
    CHECK(std::abs(flux_w(burgers, spec, s, s, h)[0] - s[0]) < 1e-14 * (1 + std::abs(s[0])));
  }
}

TEST_CASE("property: the DG operator conserves every component") {
  gen::Gen g(1006);
  for (int k = 0; k < kCases; ++k) {
    const auto mesh = g.mesh(3, 9, g.uniform(-1.0, 1.0), g.uniform(1.0, 3.0));
    const int q = g.integer(0, 3);
    const LawCase c = random_case(g, mesh, q);
    FluxSpec spec = random_flux(g);
    const DGFunction fu = dg_operator(c.law, spec, c.u);
    const State total = integral(fu);
    const DGFunction gu = l2_project(mesh, q, c.law->dim(), [&](double x) { return c.law->flux(c.u.eval(x)); }, q + 2);
    INFO(c.law->name() << " " << to_string(spec.kind) << " q=" << q);
    CHECK(total.norm() < 1e-12 * (1.0 + gu.coeffs().norm()));
  }
}

TEST_CASE("property: spatial reconstruction meets its interface and moment conditions") {
  gen::Gen g(1007);
  for (int k = 0; k < kCases; ++k) {
    const auto mesh = g.mesh(3, 8);
    const int q = g.integer(0, 3);
    const LawCase c = random_case(g, mesh, q);
    const FluxSpec spec = random_flux(g);
    const DGFunction r = spatial_reconstruct(*c.law, spec, c.u);
    INFO(c.law->name() << " " << to_string(spec.kind) << " q=" << q);
    REQUIRE(r.degree() == q + 1);
    for (int i = 0; i < mesh->cells(); ++i) {
      const State w = flux_w(*c.law, spec, c.u.trace_minus(i), c.u.trace_plus(i), mesh->interface_width(i));
      const double scale = 1.0 + w.norm();
      CHECK((r.trace_minus(i) - w).norm() < 1e-12 * scale);
      CHECK((r.trace_plus(i) - w).norm() < 1e-12 * scale);
    }
    for (int cell = 0; cell < mesh->cells(); ++cell) {
      // moments against P_0..P_{q-1}, independently by Simpson
      for (int j = 0; j < q; ++j) {
        const auto moment = [&](const DGFunction& fn) {
          return oracle::simpson([&](oracle::Real x) {
            return oracle::Real(fn.eval(double(x))[0]) * oracle::basis(j, mesh->left(cell), mesh->width(cell), x);
          }, mesh->left(cell), mesh->right(cell) - 1e-15L, 2000);
        };
        CHECK(double(moment(r)) == doctest::Approx(double(moment(c.u))).epsilon(1e-8).scale(1e-8));
      }
    }
  }
}

TEST_CASE("property: space-time residual splits into spatial and temporal parts") {
  gen::Gen g(1008);
  for (int k = 0; k < kCases; ++k) {
    const auto mesh = g.mesh(3, 6);
    const int q = g.integer(0, 3);
    const LawCase c = random_case(g, mesh, q);
    const FluxSpec spec = random_flux(g);
    const double tau = g.uniform(0.001, 0.01);
    const Vector rate = 0.05 * g.vector(static_cast<int>(c.u.coeffs().size()));
    const ResidualField field(SpaceTimeRecon(c.law, spec, mesh, q, linear_in_time(c.u.coeffs(), rate, tau, 2)));
    INFO(c.law->name() << " " << to_string(spec.kind) << " q=" << q);
    for (int j = 0; j < 3; ++j) {
      const double t = g.uniform(0.0, 2 * tau);
      const double x = g.uniform(mesh->domain_left(), mesh->domain_right());
      const auto s = field.split(t, x);
      CHECK((s.rst - s.rs - s.rt).norm() <= 1e-9 * (1.0 + s.rst.norm() + s.rt.norm()));
    }
    double total = 0;
    for (double v : field.slab_l2_squared()) total += v;
    CHECK(residual_l2(field, 2 * tau) == doctest::Approx(std::sqrt(total)).epsilon(1e-12));
  }
}

TEST_CASE("property: the bound grows with every input") {
  gen::Gen g(1009);
  for (int k = 0; k < kCases; ++k) {
    EntropyConstants c;
    c.c_eta_lower = g.uniform(0.1, 1.0);
    c.c_eta_upper = c.c_eta_lower + g.uniform(0.0, 2.0);
    c.c_g = g.uniform(0.0, 3.0);
    const double gap = g.uniform(0, 1), res = g.uniform(0, 1), init = g.uniform(0, 1), e = g.uniform(1, 10);
    const double b = estimator_bound(c, gap, res, init, e);
    const double d = g.uniform(0.0, 0.5);
    CHECK(estimator_bound(c, gap + d, res, init, e) >= b);
    CHECK(estimator_bound(c, gap, res + d, init, e) >= b);
    CHECK(estimator_bound(c, gap, res, init + d, e) >= b);
    CHECK(estimator_bound(c, gap, res, init, e + d) >= b);
    std::vector<double> times{0.0};
    std::vector<double> sup;
    for (int n = 0; n < 6; ++n) {
      times.push_back(times.back() + g.uniform(0.01, 0.1));
      sup.push_back(g.uniform(0.0, 5.0));
    }
    double prev = 1.0;
    for (double t : times) {
      const double f = exp_factor(c, times, sup, t);
      CHECK(f >= prev);
      prev = f;
    }
  }
}

TEST_CASE("property: box check agrees with pointwise containment") {
  gen::Gen g(1010);
  for (int k = 0; k < kCases; ++k) {
    const int m = g.integer(1, 3);
    StateRange r;
    std::vector<State> samples;
    for (int j = 0; j < 10; ++j) {
      samples.push_back(g.vector(m, -2.0, 2.0));
      r.include(samples.back(), g.uniform(0, 1), g.uniform(0, 1));
    }
    const CompactBox box{g.vector(m, -2.5, 0.0), g.vector(m, 0.0, 2.5)};
    const bool all = std::all_of(samples.begin(), samples.end(), [&](const State& s) { return box.contains(s); });
    CHECK(verify_in_box(r, box).ok == all);
    CHECK(verify_in_box(r, padded_box(r, g.uniform(0.0, 0.3))).ok);
  }
}
