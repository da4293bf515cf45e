#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <string>

#include "lpuniq/errors.hpp"
#include "lpuniq/metric.hpp"
#include "lpuniq/numerics.hpp"
#include "lpuniq/schrodinger.hpp"
#include "lpuniq/verifier.hpp"
#include "support.hpp"

using namespace lpuniq;
using testing::z;

namespace {

const double kS1 = 1.0 / std::sqrt(2.0);

// Newton on 2 ln b + 2 s b = ln(2 c0 p); independent of the bisection in the library.
double beta_oracle(double c0, double p, double s) {
  const double target = std::log(2.0 * c0 * p);
  double b = std::sqrt(2.0 * c0 * p);
  for (int k = 0; k < 100; ++k) b -= (2.0 * std::log(b) + 2.0 * s * b - target) / (2.0 / b + 2.0 * s);
  return b;
}

// Lambert W on the principal branch by Halley iteration.
double lambert_w(double x) {
  double w = std::log1p(x);
  for (int k = 0; k < 100; ++k) {
    const double e = std::exp(w), f = w * e - x;
    w -= f / (e * (w + 1.0) - (w + 2.0) * f / (2.0 * w + 2.0));
  }
  return w;
}

// C0 a e^{s a} = c0 p  <=>  a = W(s c0 p / C0) / s
double alpha_oracle(double c0, double p, double s, double C0) {
  return s == 0.0 ? c0 * p / C0 : lambert_w(s * c0 * p / C0) / s;
}

TestFunctionParams weighted(double beta, double c0, double p, double s, double R_target) {
  const auto pc = select_parameters(c0, p, s, beta);
  TestFunctionParams tp;
  tp.x0 = z(0);
  tp.alpha = pc.alpha;
  tp.delta = pc.delta;
  tp.R = pc.radius(R_target);
  tp.s = s;
  tp.p = p;
  tp.c0 = c0;
  tp.beta = beta;
  return tp;
}

std::string rejection(const TestFunctionParams& tp) {
  try {
    tp.require_weighted_setting();
  } catch (const ParameterError& e) {
    return e.what();
  }
  return {};
}

GraphFunction interval_solution(int R, const Potential& V) {
  const auto g = testing::lattice(1);
  const auto vs = testing::interval(-R, R);
  return dirichlet_solve(DirichletProblem(*g, vs, GraphFunction::constant(1.0), V));
}

}  // namespace

TEST_CASE("test function examples") {
  const auto g = testing::lattice(1);
  const auto comb = PseudoMetric::combinatorial(g);
  TestFunctionParams tp;
  tp.x0 = z(0);
  tp.R = 10.0;
  tp.delta = 0.3;
  tp.s = 1.0;
  const auto eta = cutoff_eta(tp, comb);
  CHECK(eta(z(0)) == 1.0);
  CHECK(testing::close(eta(z(7)), 2.0 / 3.0, 1e-15));
  CHECK(eta(z(9)) == 0.0);
  CHECK(eta(z(-12)) == 0.0);
  CHECK(eta.has_finite_support());
  CHECK(eta.support().size() == 17);

  tp.alpha = 1.0;
  tp.delta = 0.5;
  const auto xi = exponent_xi(tp, comb);
  CHECK(xi(z(4)) == 0.0);
  CHECK(xi(z(8)) == -3.0);
  CHECK(xi(z(-8)) == -3.0);
  CHECK(exponent_xi(tp, comb, true)(z(8)) == 3.0);

  TestFunctionParams tz;
  tz.x0 = z(0);
  tz.alpha = 0.4;
  const auto zeta = supersolution_zeta(tz, PseudoMetric::scaled(g, kS1));
  CHECK(zeta(z(0)) == 1.0);
  CHECK(testing::close(zeta(z(1)), 0.7536383164437652, 1e-15));

  tp.delta = 1.0;
  CHECK_THROWS_AS(cutoff_eta(tp, comb), ParameterError);
  tp.delta = 0.3;
  tp.R = 0.5;
  CHECK_THROWS_AS(cutoff_eta(tp, comb), ParameterError);
}

TEST_CASE("constants") {
  CHECK(testing::close(h_constant(1e-9, 0.3, 1.0, 2.0), -2.0, 1e-15));
  CHECK(h_constant(1.0, 0.0, 1.0, 2.0) == -1.5);
  CHECK(testing::close(h_constant(1.0, 1.0, 1.0, 2.0), 0.5 * std::exp(2.0) - 2.0, 1e-15));
  CHECK(testing::close(h_constant(1.0, 1.0, 1.0, 2.0), 1.6945280494653252, 1e-14));

  CHECK(testing::close(k_constant(1e-12, 0.5, 1.0, 3.0, 2.0), -6.0, 1e-12));
  CHECK(testing::close(k_constant(0.4, kS1, std::sqrt(2.0), 1.0, 1.0), -0.24939402282706435, 1e-12));
  CHECK(k_constant(0.5, 0.0, 4.0, 1.0, 2.0) == 0.0);
}

TEST_CASE("threshold examples") {
  CHECK(beta_threshold(1.0, 2.0, 0.0) == doctest::Approx(2.0).epsilon(1e-15));
  const double b = beta_threshold(1.0, 2.0, kS1);
  CHECK(testing::close(b, beta_oracle(1.0, 2.0, kS1), 1e-14));
  CHECK(std::abs(b - 0.99) < 0.005);
  CHECK(beta_threshold(2.0, 2.0, kS1) > b);
  CHECK_THROWS_AS(beta_threshold(1.0, 1.5, 0.0), ParameterError);

  CHECK(testing::close(alpha_threshold(3.0, 2.0, 0.0, 1.5), 4.0, 1e-15));
  const double a1 = alpha_threshold(1.0, 1.0, kS1, std::sqrt(2.0));
  CHECK(testing::close(a1, alpha_oracle(1.0, 1.0, kS1, std::sqrt(2.0)), 1e-14));
  CHECK(std::abs(a1 - 0.497) < 0.001);
  const double a2 = alpha_threshold(1.0, 2.0, kS1, std::sqrt(2.0));
  CHECK(a2 > a1);
  CHECK(testing::close(a2, alpha_oracle(1.0, 2.0, kS1, std::sqrt(2.0)), 1e-14));
}

TEST_CASE("parameter selection") {
  const double bstar = beta_threshold(1.0, 2.0, kS1);
  const auto pc = select_parameters(1.0, 2.0, kS1, 0.5 * bstar);
  CHECK(pc.beta_star == bstar);
  CHECK(pc.alpha == doctest::Approx(0.75 * bstar).epsilon(1e-15));
  CHECK(pc.delta == doctest::Approx(0.5 * (0.5 - (0.5 * bstar) / (1.5 * bstar))).epsilon(1e-15));
  CHECK(pc.radius_floor == doctest::Approx(std::max(2.0 * kS1 / (1.0 - 2.0 * pc.delta), 1.0)).epsilon(1e-15));
  CHECK(pc.radius(0.0) > pc.radius_floor);
  CHECK(pc.radius(50.0) == 50.0);
  CHECK_THROWS_AS(select_parameters(1.0, 2.0, kS1, bstar * 1.01), ParameterError);
  CHECK_THROWS_AS(select_parameters(1.0, 2.0, kS1, 0.0), ParameterError);
}

TEST_CASE("weighted setting rejects each violated inequality by name") {
  auto tp = weighted(0.5, 1.0, 2.0, kS1, 10.0);
  CHECK(rejection(tp).empty());

  auto bad = tp;
  bad.beta = 1.5;
  bad.alpha = 2.0;
  CHECK(rejection(bad).find("beta^2 e^{2 s beta} < 2 c0 p") != std::string::npos);
  bad = tp;
  bad.alpha = 3.0;
  CHECK(rejection(bad).find("alpha^2 e^{2 s alpha} < 2 c0 p") != std::string::npos);
  bad = tp;
  bad.alpha = 0.4;
  CHECK(rejection(bad).find("alpha > beta") != std::string::npos);
  bad = tp;
  bad.delta = 0.3;
  CHECK(rejection(bad).find("delta < 1/2 - beta/(2 alpha)") != std::string::npos);
  bad = tp;
  bad.R = 1.0;
  CHECK(rejection(bad).find("R > max{2s/(1 - 2 delta), 1}") != std::string::npos);
  bad = tp;
  bad.p = 1.5;
  CHECK_FALSE(rejection(bad).empty());

  TestFunctionParams dual;
  dual.alpha = 0.9;
  dual.s = kS1;
  dual.C0 = std::sqrt(2.0);
  dual.p = 1.0;
  dual.c0 = 1.0;
  CHECK_THROWS_WITH_AS(dual.require_dual_setting(), doctest::Contains("C0 alpha e^{s alpha} < c0 p"), ParameterError);
  dual.alpha = 0.4;
  CHECK_NOTHROW(dual.require_dual_setting());
}

TEST_CASE("xi energy examples") {
  const auto g = testing::lattice(1);
  const auto m = PseudoMetric::scaled(g, kS1);
  TestFunctionParams tp;
  tp.x0 = z(0);
  tp.alpha = 0.9;
  tp.delta = 0.05;
  tp.R = 40.0;
  tp.s = kS1;
  tp.p = 2.0;
  tp.c0 = 1.0;
  tp.beta = 0.8;
  const auto region = ball_region(m, z(0), 40.0);
  const auto r = check_xi_energy(m, Potential::constant(1.0), tp, region);
  CHECK(r.passed());
  CHECK(r.margins().size() == region.size());
  CHECK(r.quantity("H") < 0.0);

  // flat vertices: left side is -p V mu and the margin is H + p c0 >= 0
  const auto flat = check_xi_energy(m, Potential::constant(1.0), tp, materialize(*g, testing::interval(-1, 1)));
  for (const auto& mg : flat.margins())
    CHECK(testing::close(mg.margin, r.quantity("H") + 2.0, 1e-14));

  tp.alpha = 3.0;
  CHECK_THROWS_AS(check_xi_energy(m, Potential::constant(1.0), tp, region), ParameterError);

  // combinatorial metric is not intrinsic
  tp.alpha = 0.9;
  tp.s = 1.0;
  tp.beta = 0.5;
  tp.alpha = 0.6;
  CHECK_THROWS_WITH_AS(check_xi_energy(PseudoMetric::combinatorial(g), Potential::constant(1.0), tp, region),
                       doctest::Contains("not intrinsic"), ParameterError);
}

TEST_CASE("cutoff gradient examples") {
  const auto g = testing::lattice(1);
  const auto comb = PseudoMetric::combinatorial(g);
  TestFunctionParams tp;
  tp.x0 = z(0);
  tp.R = 10.0;
  tp.delta = 0.3;
  tp.s = 1.0;
  const auto region = materialize(*g, testing::interval(-14, 14));
  const auto r = check_cutoff_gradient(comb, tp, region);
  CHECK_FALSE(r.messages().empty());  // no C0 given

  // edge bounds hold for any metric; the ramp edge 6|7 is tight
  for (const auto& mg : r.margins()) {
    if (mg.site.rfind("edge:", 0) == 0) CHECK_FALSE(mg.failed());
    if (mg.site == "edge:6|7") CHECK(std::abs(mg.margin) < 1e-15);
    if (mg.site == "energy:0" || mg.site == "energy:14") CHECK(mg.margin == 0.0);
  }
  // the squared sum needs sum_y w d^2 <= mu, which the hop metric misses by a factor 2
  CHECK(r.failing_sites() == std::vector<std::string>{"energy:-8", "energy:-7", "energy:7", "energy:8"});

  const auto m = PseudoMetric::scaled(g, kS1);
  tp.s = kS1;
  tp.R = 8.0;
  const auto scaled = check_cutoff_gradient(m, tp, region);
  CHECK(scaled.passed());
  tp.C0 = std::sqrt(2.0);
  const auto with_lap = check_cutoff_gradient(m, tp, region);
  CHECK(with_lap.passed());
  CHECK(with_lap.margins().size() > scaled.margins().size());

  // jump size smaller than the edges is refused
  tp.s = 0.5;
  CHECK_THROWS_AS(check_cutoff_gradient(m, tp, region), ParameterError);
}

TEST_CASE("zeta supersolution examples") {
  const auto g = testing::lattice(1);
  const auto m = PseudoMetric::scaled(g, kS1);
  TestFunctionParams tp;
  tp.x0 = z(0);
  tp.alpha = 0.4;
  tp.s = kS1;
  tp.C0 = std::sqrt(2.0);
  tp.p = 1.0;
  tp.c0 = 1.0;
  const auto region = ball_region(m, z(0), 10.0);
  const auto r = check_zeta_supersolution(m, Potential::constant(1.0), tp, region);
  CHECK(r.passed());
  CHECK(testing::close(r.quantity("K"), -0.24939402282706435, 1e-12));
  const double lhs0 = 2.0 * std::exp(-0.4 * kS1) - 2.0 - 1.0;
  CHECK(testing::close(lhs0, -1.492724, 1e-6));
  for (const auto& mg : r.margins())
    if (mg.site == "0") CHECK(testing::close(mg.margin, r.quantity("K") - lhs0, 1e-14));

  tp.alpha = 1e-9;
  CHECK(check_zeta_supersolution(m, Potential::constant(1.0), tp, region).passed());

  const auto t = testing::tree(3);
  const auto mt = PseudoMetric::scaled(t, 1.0 / std::sqrt(3.0));
  TestFunctionParams tt;
  tt.x0 = VertexId::root();
  tt.alpha = 0.3;
  tt.s = 1.0 / std::sqrt(3.0);
  tt.C0 = std::sqrt(3.0);
  tt.p = 1.5;
  tt.c0 = 2.0;
  CHECK(check_zeta_supersolution(mt, Potential::constant(2.0), tt, ball_region(mt, VertexId::root(), 8.0 / std::sqrt(3.0)))
            .passed());

  // declared C0 too small
  tp.alpha = 0.4;
  tp.C0 = 1.0;
  CHECK_THROWS_AS(check_zeta_supersolution(m, Potential::constant(1.0), tp, region), ParameterError);
  // potential below c0
  tp.C0 = std::sqrt(2.0);
  CHECK_THROWS_AS(check_zeta_supersolution(m, Potential::constant(0.5), tp, region), ParameterError);
}

TEST_CASE("compatibility examples") {
  const auto g = testing::lattice(1);
  const auto comb = PseudoMetric::combinatorial(g);
  TestFunctionParams tp;
  tp.x0 = z(0);
  tp.R = 10.0;
  tp.delta = 0.3;
  tp.s = 1.0;
  tp.alpha = 0.5;
  const auto region = materialize(*g, testing::interval(-12, 12));
  const auto eta = cutoff_eta(tp, comb);
  CHECK(check_monotone_compatibility(*g, eta, exponent_xi(tp, comb), region).passed());
  CHECK(check_monotone_compatibility(*g, GraphFunction::constant(0.5), exponent_xi(tp, comb, true), region).passed());

  const auto bad = check_monotone_compatibility(*g, eta, exponent_xi(tp, comb, true), region);
  CHECK_FALSE(bad.passed());
  for (const auto& site : bad.failing_sites()) CHECK(site.find('|') != std::string::npos);
  CHECK(std::find(bad.failing_sites().begin(), bad.failing_sites().end(), "7|8") != bad.failing_sites().end());
}

TEST_CASE("energy estimate examples") {
  const auto g = testing::lattice(1);
  const auto comb = PseudoMetric::combinatorial(g);
  const auto V = Potential::constant(1.0);
  TestFunctionParams tp;
  tp.x0 = z(0);
  tp.R = 20.0;
  tp.delta = 0.3;
  tp.s = 1.0;
  tp.alpha = 0.9;
  const auto eta = cutoff_eta(tp, comb);
  const auto xi = exponent_xi(tp, comb);
  const auto region = materialize(*g, testing::interval(-30, 30));
  const auto u = interval_solution(30, V);
  const auto r = check_energy_estimate(*g, u, V, eta, xi, 2.0, region);
  CHECK(r.passed());
  CHECK(r.quantity("margin") >= 0.0);
  CHECK(r.quantity("margin_doubled") == 2.0 * r.quantity("margin"));

  const auto zero = interval_solution(30, V).scaled(0.0);
  const auto r0 = check_energy_estimate(*g, zero, V, eta, xi, 2.0, region);
  CHECK(r0.quantity("lhs") == 0.0);
  CHECK(r0.quantity("rhs") == 0.0);
  CHECK(r0.passed());

  CHECK_THROWS_AS(check_energy_estimate(*g, u, V, eta, xi, 1.5, region), ParameterError);
  CHECK_THROWS_WITH_AS(check_energy_estimate(*g, u, V, eta, exponent_xi(tp, comb, true), 2.0, region),
                       doctest::Contains("e^{xi(y)} - e^{xi(x)}] >= 0 fails on edge"), PreconditionError);
  // solution domain too small for the support
  const auto small = interval_solution(15, V);
  CHECK_THROWS_AS(check_energy_estimate(*g, small, V, eta, xi, 2.0, region), PreconditionError);
  // not a solution
  CHECK_THROWS_WITH_AS(check_energy_estimate(*g, GraphFunction::constant(1.0), V, eta, xi, 2.0, region),
                       doctest::Contains("does not solve"), PreconditionError);
  // region missing the neighborhood of the support
  CHECK_THROWS_AS(
      check_energy_estimate(*g, u, V, eta, xi, 2.0, materialize(*g, testing::interval(-18, 18))), PreconditionError);
}

TEST_CASE("dual estimate examples") {
  const auto g = testing::lattice(1);
  const auto comb = PseudoMetric::combinatorial(g);
  const auto V = Potential::constant(1.0);
  TestFunctionParams tp;
  tp.x0 = z(0);
  tp.R = 25.0;
  tp.delta = 0.4;
  tp.s = 1.0;
  tp.alpha = 0.4;
  const auto v = cutoff_eta(tp, comb) * supersolution_zeta(tp, comb);
  const auto region = materialize(*g, testing::interval(-40, 40));
  const auto u = interval_solution(40, V);
  for (double p : {1.0, 1.5, 2.0}) {
    const auto r = check_dual_estimate(*g, u, V, v, p, region);
    CHECK(r.passed());
    CHECK(r.quantity("sum") <= 1e-15);
  }
  CHECK(check_dual_estimate(*g, u.scaled(0.0), V, v, 2.0, region).quantity("sum") == 0.0);
  CHECK(check_dual_estimate(*g, u, V, GraphFunction::finite({}), 2.0, region).quantity("sum") == 0.0);

  CHECK_THROWS_AS(check_dual_estimate(*g, u, V, v.scaled(-1.0), 2.0, region), PreconditionError);
  CHECK_THROWS_AS(check_dual_estimate(*g, u, V, v, 2.0, materialize(*g, testing::interval(-24, 24))),
                  PreconditionError);
  CHECK_THROWS_AS(check_dual_estimate(*g, u, V, supersolution_zeta(tp, comb), 2.0, region), PreconditionError);
}

// --- properties --------------------------------------------------------------

TEST_CASE("property: thresholds solve their equations and are monotone") {
  Rng rng(31);
  for (int k = 0; k < 200; ++k) {
    const double c0 = std::exp(rng.uniform(-3.0, 2.0));
    const double p = rng.uniform(2.0, 5.0);
    const double s = rng.uniform(0.0, 2.0);
    const double C0 = rng.uniform(0.2, 4.0);
    const double b = beta_threshold(c0, p, s);
    CHECK(std::abs(h_constant(b, s, c0, p)) <= 2e-12 * (c0 * p));
    CHECK(std::abs(b * b * std::exp(2.0 * s * b) - 2.0 * c0 * p) <= 2e-12 * (2.0 * c0 * p));
    CHECK(testing::close(b, beta_oracle(c0, p, s), 1e-12));

    const double a = alpha_threshold(c0, p, s, C0);
    CHECK(std::abs(k_constant(a, s, C0, c0, p)) <= 2e-12 * (c0 * p));
    CHECK(testing::close(a, alpha_oracle(c0, p, s, C0), 1e-12));
    const double f = rng.uniform(0.01, 0.99);
    CHECK(k_constant(f * a, s, C0, c0, p) < 0.0);
    CHECK(k_constant(a / f, s, C0, c0, p) > 0.0);

    CHECK(beta_threshold(c0 * 1.1, p, s) > b);
    CHECK(beta_threshold(c0, p + 0.5, s) > b);
    CHECK(beta_threshold(c0, p, s + 0.1) < b);
  }
}

TEST_CASE("property: selected parameters always satisfy the weighted setting") {
  Rng rng(41);
  for (int k = 0; k < 300; ++k) {
    const double c0 = std::exp(rng.uniform(-3.0, 2.0));
    const double p = rng.uniform(2.0, 5.0);
    const double s = rng.uniform(0.0, 2.0);
    const double beta = rng.uniform(0.01, 0.99) * beta_threshold(c0, p, s);
    const auto tp = weighted(beta, c0, p, s, rng.uniform(0.0, 30.0));
    CHECK_NOTHROW(tp.require_weighted_setting());
    CHECK(h_constant(tp.alpha, s, c0, p) < 0.0);
  }
}

TEST_CASE("property: test-function checks pass on random admissible parameters") {
  Rng rng(43);
  const std::vector<GraphPtr> graphs{testing::lattice(1), testing::lattice(2), testing::tree(3)};
  for (const auto& g : graphs) {
    const auto m = PseudoMetric::family_default(g);
    const double s = m.scale();
    const VertexId o = g->base_vertex();
    for (int k = 0; k < 6; ++k) {
      const double c0 = std::exp(rng.uniform(-2.0, 1.5));
      const double p = rng.uniform(2.0, 4.0);
      const double beta = rng.uniform(0.1, 0.95) * beta_threshold(c0, p, s);
      auto tp = weighted(beta, c0, p, s, 3.0);
      tp.x0 = o;
      tp.C0 = m.scale() * static_cast<double>(g->neighbors(o).size());
      const auto V = Potential::perturbed(c0, rng.uniform(0.0, 2.0), rng.next());
      const auto region = ball_region(m, o, tp.R + 2.0 * s);
      CHECK(check_xi_energy(m, V, tp, region).passed());
      CHECK(check_cutoff_gradient(m, tp, region).passed());
      CHECK(check_zeta_supersolution(m, V, tp, region).passed());
    }
  }
}

TEST_CASE("property: estimate sides scale with |c|^p and the verdict does not move") {
  const auto g = testing::lattice(1);
  const auto comb = PseudoMetric::combinatorial(g);
  const auto V = Potential::perturbed(0.5, 1.0, 5);
  TestFunctionParams tp;
  tp.x0 = z(0);
  tp.R = 12.0;
  tp.delta = 0.3;
  tp.s = 1.0;
  tp.alpha = 0.4;
  const auto eta = cutoff_eta(tp, comb);
  const auto xi = exponent_xi(tp, comb);
  const auto region = materialize(*g, testing::interval(-20, 20));
  const auto u = interval_solution(20, V);
  Rng rng(7);
  for (double p : {2.0, 3.0}) {
    const auto base = check_energy_estimate(*g, u, V, eta, xi, p, region);
    const auto dual = check_dual_estimate(*g, u, V, eta, p, region);
    for (int k = 0; k < 10; ++k) {
      const double c = std::exp(rng.uniform(-5.0, 5.0));
      const auto scaled = check_energy_estimate(*g, u.scaled(c), V, eta, xi, p, region);
      CHECK(testing::close(scaled.quantity("lhs"), std::pow(c, p) * base.quantity("lhs"), 1e-12));
      CHECK(testing::close(scaled.quantity("rhs"), std::pow(c, p) * base.quantity("rhs"), 1e-12));
      CHECK(scaled.failing_sites() == base.failing_sites());
      const auto sd = check_dual_estimate(*g, u.scaled(c), V, eta, p, region);
      CHECK(testing::close(sd.quantity("sum") / std::pow(c, p), dual.quantity("sum"), 1e-12));
      CHECK(sd.failing_sites() == dual.failing_sites());
    }
  }
}
