#include "lpuniq/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lpuniq/calculus.hpp"
#include "lpuniq/errors.hpp"

namespace lpuniq {

namespace {

std::string num(double v) { return format_double(v); }

void echo(VerificationReport& r, const TestFunctionParams& tp) {
  r.set_label("x0", tp.x0.to_string());
  r.set_param("alpha", tp.alpha);
  r.set_param("R", tp.R);
  r.set_param("delta", tp.delta);
  r.set_param("s", tp.s);
  r.set_param("C0", tp.C0);
  r.set_param("p", tp.p);
  r.set_param("c0", tp.c0);
  r.set_param("beta", tp.beta);
}

struct MetricAudit {
  double jump = 0.0;
  double q1 = 0.0;
  double q2 = 0.0;
};

// Jump size and intrinsic sums seen from the region (full neighborhoods).
MetricAudit audit(const PseudoMetric& m, const GraphRegion& region) {
  MetricAudit a;
  for (std::size_t i = 0; i < region.size(); ++i) {
    const auto& x = region.vertex(i);
    double s1 = 0.0, s2 = 0.0;
    for (const auto& n : region.full_neighbors(i)) {
      const double d = m.distance(x, n.vertex);
      a.jump = std::max(a.jump, d);
      s1 += n.weight * d;
      s2 += n.weight * d * d;
    }
    a.q1 = std::max(a.q1, s1 / region.measure(i));
    a.q2 = std::max(a.q2, s2 / region.measure(i));
  }
  return a;
}

constexpr double kMetricSlack = 1e-12;

void require_jump(const MetricAudit& a, double s) {
  if (a.jump > s * (1.0 + kMetricSlack) + kMetricSlack)
    throw ParameterError("jump size s = " + num(s) + " is below an observed edge length " + num(a.jump));
}

void require_c0_bound(const MetricAudit& a, double C0) {
  if (!(C0 > 0.0)) throw ParameterError("1-intrinsic bound C0 > 0 is required");
  if (a.q1 > C0 * (1.0 + kMetricSlack))
    throw ParameterError("metric is not 1-intrinsic with bound C0 = " + num(C0) + ": (1/mu) sum w d = " +
                         num(a.q1));
}

std::string edge_site(const VertexId& x, const VertexId& y) { return x.to_string() + "|" + y.to_string(); }

}  // namespace

// --- parameters ------------------------------------------------------------

void TestFunctionParams::require_weighted_setting() const {
  if (!(p >= 2.0)) throw ParameterError("p >= 2 is required, got p = " + num(p));
  if (!(c0 > 0.0)) throw ParameterError("c0 > 0 is required");
  if (!(s >= 0.0)) throw ParameterError("jump size s >= 0 is required");
  if (!(beta > 0.0)) throw ParameterError("beta > 0 is required");
  if (!(beta * beta * std::exp(2.0 * s * beta) < 2.0 * c0 * p))
    throw ParameterError("beta^2 e^{2 s beta} < 2 c0 p fails: " +
                         num(beta * beta * std::exp(2.0 * s * beta)) + " >= " + num(2.0 * c0 * p));
  if (!(alpha * alpha * std::exp(2.0 * s * alpha) < 2.0 * c0 * p))
    throw ParameterError("alpha^2 e^{2 s alpha} < 2 c0 p fails: " +
                         num(alpha * alpha * std::exp(2.0 * s * alpha)) + " >= " + num(2.0 * c0 * p));
  if (!(alpha > beta)) throw ParameterError("alpha > beta fails: " + num(alpha) + " <= " + num(beta));
  const double dmax = 0.5 - beta / (2.0 * alpha);
  if (!(delta > 0.0 && delta < dmax))
    throw ParameterError("0 < delta < 1/2 - beta/(2 alpha) fails: delta = " + num(delta) +
                         ", bound " + num(dmax));
  const double floor = std::max(2.0 * s / (1.0 - 2.0 * delta), 1.0);
  if (!(R > floor))
    throw ParameterError("R > max{2s/(1 - 2 delta), 1} fails: R = " + num(R) + ", bound " + num(floor));
}

void TestFunctionParams::require_dual_setting() const {
  if (!(p >= 1.0)) throw ParameterError("p >= 1 is required, got p = " + num(p));
  if (!(alpha > 0.0)) throw ParameterError("alpha > 0 is required");
  if (!(C0 > 0.0)) throw ParameterError("C0 > 0 is required");
  if (!(C0 * alpha * std::exp(s * alpha) < c0 * p))
    throw ParameterError("C0 alpha e^{s alpha} < c0 p fails: " + num(C0 * alpha * std::exp(s * alpha)) +
                         " >= " + num(c0 * p));
}

// --- test functions --------------------------------------------------------

GraphFunction cutoff_eta(const TestFunctionParams& tp, const PseudoMetric& m) {
  if (!(tp.delta > 0.0 && tp.delta < 1.0)) throw ParameterError("0 < delta < 1 fails: delta = " + num(tp.delta));
  if (!(tp.R > tp.s)) throw ParameterError("R > s fails: R = " + num(tp.R) + ", s = " + num(tp.s));
  const double R = tp.R, s = tp.s, width = tp.delta * tp.R;
  const VertexId x0 = tp.x0;
  auto support = ball(m, x0, R - s);
  return GraphFunction::with_support(
      [m, x0, R, s, width](const VertexId& x) {
        return std::min(std::max(R - s - m.distance(x0, x), 0.0) / width, 1.0);
      },
      std::move(support), "eta");
}

GraphFunction exponent_xi(const TestFunctionParams& tp, const PseudoMetric& m, bool increasing) {
  if (!(tp.alpha > 0.0)) throw ParameterError("alpha > 0 fails");
  if (!(tp.delta > 0.0 && tp.delta < 1.0)) throw ParameterError("0 < delta < 1 fails: delta = " + num(tp.delta));
  if (!(tp.R > 0.0)) throw ParameterError("R > 0 fails");
  const double rate = increasing ? tp.alpha : -tp.alpha;
  const double inner = tp.delta * tp.R;
  const VertexId x0 = tp.x0;
  return GraphFunction::closed_form(
      [m, x0, rate, inner](const VertexId& x) { return rate * std::max(m.distance(x, x0) - inner, 0.0); },
      increasing ? "xi_increasing" : "xi");
}

GraphFunction supersolution_zeta(const TestFunctionParams& tp, const PseudoMetric& m) {
  if (!(tp.alpha > 0.0)) throw ParameterError("alpha > 0 fails");
  const double alpha = tp.alpha;
  const VertexId x0 = tp.x0;
  return GraphFunction::closed_form(
      [m, x0, alpha](const VertexId& x) { return std::exp(-alpha * m.distance(x, x0)); }, "zeta");
}

// --- constants and thresholds ----------------------------------------------

double h_constant(double alpha, double s, double c0, double p) {
  return 0.5 * alpha * alpha * std::exp(2.0 * s * alpha) - c0 * p;
}

double k_constant(double alpha, double s, double C0, double c0, double p) {
  return C0 * alpha * std::exp(alpha * s) - p * c0;
}

namespace {

double beta_root(double c0, double p, double s) {
  const double target = 2.0 * c0 * p;
  return bisect_increasing([&](double b) { return b * b * std::exp(2.0 * s * b) - target; }, 0.0,
                           2.0 * std::sqrt(target), 0.0);
}

}  // namespace

double beta_threshold(double c0, double p, double s) {
  if (!(c0 > 0.0) || !(p >= 2.0) || !(s >= 0.0))
    throw ParameterError("beta threshold needs c0 > 0, p >= 2, s >= 0");
  return beta_root(c0, p, s);
}

double alpha_threshold(double c0, double p, double s, double C0) {
  if (!(c0 > 0.0) || !(p >= 1.0) || !(s >= 0.0) || !(C0 > 0.0))
    throw ParameterError("alpha threshold needs c0 > 0, p >= 1, s >= 0, C0 > 0");
  const double target = c0 * p;
  return bisect_increasing([&](double a) { return C0 * a * std::exp(s * a) - target; }, 0.0,
                           2.0 * target / C0, 0.0);
}

double ParameterChoice::radius(double target) const {
  const double above = radius_floor * (1.0 + 1e-6) + 1e-6;
  return std::max(target, above);
}

ParameterChoice select_parameters(double c0, double p, double s, double beta) {
  if (!(c0 > 0.0) || !(p >= 1.0) || !(s >= 0.0))
    throw ParameterError("parameter selection needs c0 > 0, p >= 1, s >= 0");
  ParameterChoice pc;
  pc.beta = beta;
  pc.beta_star = beta_root(c0, p, s);
  if (!(beta > 0.0 && beta < pc.beta_star))
    throw ParameterError("beta^2 e^{2 s beta} < 2 c0 p fails: beta = " + num(beta) +
                         " is not below the threshold " + num(pc.beta_star));
  pc.alpha = 0.5 * (beta + pc.beta_star);
  pc.delta = 0.5 * (0.5 - beta / (2.0 * pc.alpha));
  pc.radius_floor = std::max(2.0 * s / (1.0 - 2.0 * pc.delta), 1.0);
  return pc;
}

// --- test-function checks -------------------------------------------------

VerificationReport check_xi_energy(const PseudoMetric& m, const Potential& V,
                                   const TestFunctionParams& tp, const GraphRegion& region,
                                   const Tolerance& tol) {
  tp.require_weighted_setting();
  const MetricAudit a = audit(m, region);
  require_jump(a, tp.s);
  if (a.q2 > 1.0 + kMetricSlack)
    throw ParameterError("metric is not intrinsic: (1/mu) sum w d^2 = " + num(a.q2) + " > 1");
  if (V.c0() < tp.c0 * (1.0 - kMetricSlack))
    throw ParameterError("potential infimum " + num(V.c0()) + " is below c0 = " + num(tp.c0));

  VerificationReport r("xi_energy");
  echo(r, tp);
  const double H = h_constant(tp.alpha, tp.s, tp.c0, tp.p);
  r.set_quantity("H", H);
  const GraphFunction xi = exponent_xi(tp, m);
  for (std::size_t i = 0; i < region.size(); ++i) {
    const auto& x = region.vertex(i);
    const double xx = xi(x), mu = region.measure(i);
    double sum = 0.0;
    for (const auto& n : region.full_neighbors(i)) {
      const double e = 1.0 - std::exp(xi(n.vertex) - xx);
      sum += n.weight * e * e;
    }
    const double lhs = 0.5 * sum - tp.p * V(x) * mu;
    const double rhs = H * mu;
    r.add(x.to_string(), rhs - lhs, tol.for_inequality(lhs, rhs));
  }
  return r;
}

VerificationReport check_cutoff_gradient(const PseudoMetric& m, const TestFunctionParams& tp,
                                         const GraphRegion& region, const Tolerance& tol) {
  const MetricAudit a = audit(m, region);
  require_jump(a, tp.s);
  const bool laplacian_bound = tp.C0 > 0.0;
  if (laplacian_bound) require_c0_bound(a, tp.C0);

  VerificationReport r("cutoff_gradient");
  echo(r, tp);
  const GraphFunction eta = cutoff_eta(tp, m);
  const double width = tp.delta * tp.R;
  const double inner = (1.0 - tp.delta) * tp.R - 2.0 * tp.s;
  if (!laplacian_bound) r.note("Laplacian bound skipped: no 1-intrinsic bound C0 given");

  for (std::size_t i = 0; i < region.size(); ++i) {
    const auto& x = region.vertex(i);
    const double dx = m.distance(x, tp.x0);
    const bool annulus = dx >= inner && dx <= tp.R;
    const double ex = eta(x), mu = region.measure(i);
    double sq = 0.0, lap = 0.0;
    for (const auto& n : region.full_neighbors(i)) {
      const double diff = eta(n.vertex) - ex;
      const double bound = annulus ? m.distance(x, n.vertex) / width : 0.0;
      r.add("edge:" + edge_site(x, n.vertex), bound - std::abs(diff), tol.for_inequality(diff, bound));
      sq += diff * diff * n.weight;
      lap += diff * n.weight;
    }
    const double sq_bound = annulus ? mu / (width * width) : 0.0;
    r.add("energy:" + x.to_string(), sq_bound - sq, tol.for_inequality(sq, sq_bound));
    if (laplacian_bound) {
      lap /= mu;
      const double lap_bound = annulus ? tp.C0 / width : 0.0;
      r.add("laplacian:" + x.to_string(), lap_bound - std::abs(lap), tol.for_inequality(lap, lap_bound));
    }
  }
  return r;
}

VerificationReport check_zeta_supersolution(const PseudoMetric& m, const Potential& V,
                                            const TestFunctionParams& tp, const GraphRegion& region,
                                            const Tolerance& tol) {
  if (!(tp.alpha > 0.0)) throw ParameterError("alpha > 0 fails");
  if (!(tp.p >= 1.0)) throw ParameterError("p >= 1 is required, got p = " + num(tp.p));
  const MetricAudit a = audit(m, region);
  require_jump(a, tp.s);
  require_c0_bound(a, tp.C0);
  if (V.c0() < tp.c0 * (1.0 - kMetricSlack))
    throw ParameterError("potential infimum " + num(V.c0()) + " is below c0 = " + num(tp.c0));

  VerificationReport r("zeta_supersolution");
  echo(r, tp);
  const double K = k_constant(tp.alpha, tp.s, tp.C0, tp.c0, tp.p);
  r.set_quantity("K", K);
  const GraphFunction zeta = supersolution_zeta(tp, m);
  for (std::size_t i = 0; i < region.size(); ++i) {
    const auto& x = region.vertex(i);
    const double zx = zeta(x);
    double flow = 0.0;
    for (const auto& n : region.full_neighbors(i)) flow += (zeta(n.vertex) - zx) * n.weight;
    const double lhs = flow / region.measure(i) - tp.p * V(x) * zx;
    const double rhs = K * zx;
    r.add(x.to_string(), rhs - lhs, tol.for_inequality(lhs, rhs));
  }
  return r;
}

VerificationReport check_monotone_compatibility(const Graph& g, const GraphFunction& eta,
                                                const GraphFunction& xi, const GraphRegion& region,
                                                const Tolerance& tol) {
  VerificationReport r("compatibility");
  for (std::size_t i = 0; i < region.size(); ++i) {
    const auto& x = region.vertex(i);
    const double ex = eta(x), zx = std::exp(xi(x));
    for (const auto& n : g.neighbors(x)) {
      const double ey = eta(n.vertex), zy = std::exp(xi(n.vertex));
      const double a = ey * ey - ex * ex, b = zy - zx;
      r.add(edge_site(x, n.vertex), a * b, tol.for_inequality(a * b, std::abs(a) * (zx + zy)));
    }
  }
  return r;
}

// --- estimates for solutions -----------------------------------------------

namespace {

void require_contained(const GraphRegion& region, std::span<const VertexId> needed, const char* what) {
  for (const auto& v : needed)
    if (!region.contains(v))
      throw PreconditionError(std::string("region must contain ") + what + " (missing " + v.to_string() + ")");
}

void require_solution(const Graph& g, const GraphFunction& u, const Potential& V,
                      std::span<const VertexId> where) {
  VerificationReport res;
  try {
    res = residual_report(g, V, u, where);
  } catch (const DomainError& e) {
    throw PreconditionError(std::string("solution is not available where the equation is needed: ") + e.what());
  }
  if (!res.passed()) {
    const auto bad = res.failing_sites();
    throw PreconditionError("u does not solve Lu = Vu at " + bad.front() + " (max residual " +
                            num(res.quantity("max_residual")) + ")");
  }
}

void require_nonnegative_finite(const GraphFunction& f, const char* name) {
  if (!f.has_finite_support())
    throw PreconditionError(std::string(name) + " must have finite support");
  for (const auto& x : f.support())
    if (f(x) < 0.0) throw PreconditionError(std::string(name) + " is negative at " + x.to_string());
}

}  // namespace

VerificationReport check_energy_estimate(const Graph& g, const GraphFunction& u, const Potential& V,
                                         const GraphFunction& eta, const GraphFunction& xi, double p,
                                         const GraphRegion& region, const Tolerance& tol) {
  if (!(p >= 2.0)) throw ParameterError("p >= 2 is required, got p = " + num(p));
  require_nonnegative_finite(eta, "eta");
  const auto closure = neighborhood(g, eta.support(), 1);
  require_contained(region, closure, "supp eta and its neighbors");

  const auto compat = check_monotone_compatibility(g, eta, xi, materialize(g, closure), tol);
  if (!compat.passed())
    throw PreconditionError("[eta^2(y) - eta^2(x)][e^{xi(y)} - e^{xi(x)}] >= 0 fails on edge " +
                            compat.failing_sites().front());
  require_solution(g, u, V, closure);

  VerificationReport r("energy_estimate");
  r.set_param("p", p);
  r.set_quantity("compatibility_min", compat.min_margin());
  Accumulator lhs, rhs;
  for (const auto& x : closure) {
    const double ux = std::pow(std::abs(u(x)), p);
    if (ux == 0.0) continue;
    const double ex = eta(x), xx = xi(x);
    double bracket = 0.0;
    for (const auto& n : g.neighbors(x)) {
      const double xy = xi(n.vertex);
      const double e = 1.0 - std::exp(xy - xx);
      bracket += n.weight * e * e;
      const double de = eta(n.vertex) - ex;
      rhs.add(ux * std::exp(xy) * de * de * n.weight);
    }
    if (ex != 0.0) lhs.add(0.5 * ux * ex * ex * std::exp(xx) * (V(x) * p * g.measure(x) - 0.5 * bracket));
  }
  const double L = lhs.total(), Rt = rhs.total();
  const double t = tol.for_inequality(L, Rt);
  r.add("statement", Rt - L, t);
  r.set_quantity("lhs", L);
  r.set_quantity("rhs", Rt);
  r.set_quantity("margin", Rt - L);
  r.set_quantity("margin_doubled", 2.0 * (Rt - L));
  r.set_quantity("support_size", static_cast<double>(eta.support().size()));
  return r;
}

VerificationReport check_dual_estimate(const Graph& g, const GraphFunction& u, const Potential& V,
                                       const GraphFunction& v, double p, const GraphRegion& region,
                                       const Tolerance& tol) {
  if (!(p >= 1.0)) throw ParameterError("p >= 1 is required, got p = " + num(p));
  require_nonnegative_finite(v, "v");
  require_contained(region, neighborhood(g, v.support(), 2), "supp v and its two-step neighborhood");
  require_solution(g, u, V, v.support());

  VerificationReport r("dual_estimate");
  r.set_param("p", p);
  Accumulator sum;
  double scale = 0.0;
  for (const auto& x : neighborhood(g, v.support(), 1)) {
    const double ux = std::pow(std::abs(u(x)), p);
    if (ux == 0.0) continue;
    const double vx = v(x), mu = g.measure(x);
    const double lv = laplacian(g, v, x);
    const double pv = vx == 0.0 ? 0.0 : p * V(x) * vx;
    sum.add(ux * (-lv + pv) * mu);
    scale += ux * (std::abs(lv) + pv) * mu;
  }
  const double S = sum.total();
  r.add("sum", -S, tol.inequality_abs + tol.inequality_rel * scale);
  r.set_quantity("sum", S);
  r.set_quantity("scale", scale);
  r.set_quantity("support_size", static_cast<double>(v.support().size()));
  return r;
}

}  // namespace lpuniq
