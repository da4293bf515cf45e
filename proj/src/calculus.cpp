#include "lpuniq/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "lpuniq/errors.hpp"
#include "lpuniq/numerics.hpp"

namespace lpuniq {

bool SidePair::agrees(double rel) const {
  return std::abs(lhs - rhs) <= rel * (1.0 + std::max(std::abs(lhs), std::abs(rhs)));
}

double difference(const GraphFunction& f, const VertexId& x, const VertexId& y) {
  return f(y) - f(x);
}

double gradient_squared(const Graph& g, const GraphFunction& f, const VertexId& x) {
  const double fx = f(x);
  double sum = 0.0;
  for (const auto& n : g.neighbors(x)) {
    const double d = f(n.vertex) - fx;
    sum += n.weight * d * d;
  }
  return sum / g.measure(x);
}

double laplacian(const Graph& g, const GraphFunction& f, const VertexId& x) {
  const double fx = f(x);
  double sum = 0.0;
  for (const auto& n : g.neighbors(x)) sum += (f(n.vertex) - fx) * n.weight;
  return sum / g.measure(x);
}

SidePair product_rule(const GraphFunction& f, const GraphFunction& h, const VertexId& x,
                      const VertexId& y) {
  const double fx = f(x), fy = f(y), hx = h(x), hy = h(y);
  return {fy * hy - fx * hx, fx * (hy - hx) + (fy - fx) * hy};
}

SidePair laplacian_of_product(const Graph& g, const GraphFunction& f, const GraphFunction& h,
                              const VertexId& x) {
  const double fx = f(x), hx = h(x);
  double prod = 0.0, lf = 0.0, lh = 0.0, cross = 0.0;
  for (const auto& n : g.neighbors(x)) {
    const double fy = f(n.vertex), hy = h(n.vertex);
    prod += (fy * hy - fx * hx) * n.weight;
    lf += (fy - fx) * n.weight;
    lh += (hy - hx) * n.weight;
    cross += (fy - fx) * (hy - hx) * n.weight;
  }
  const double mu = g.measure(x);
  return {prod / mu, fx * (lh / mu) + hx * (lf / mu) + cross / mu};
}

SidePair integration_by_parts(const Graph& g, const GraphFunction& f, const GraphFunction& h,
                              const GraphRegion& region) {
  const GraphFunction* finite = f.has_finite_support() ? &f : h.has_finite_support() ? &h : nullptr;
  if (!finite) throw PreconditionError("summation by parts needs a finitely supported function");
  for (const auto& v : neighborhood(g, finite->support(), 1))
    if (!region.contains(v))
      throw PreconditionError("region does not contain the support and its neighborhood (missing " +
                              v.to_string() + ")");

  Accumulator lhs, rhs;
  for (std::size_t i = 0; i < region.size(); ++i) {
    const auto& x = region.vertex(i);
    const double hx = h(x);
    const double fx = f(x);
    double lf = 0.0;
    for (const auto& n : region.full_neighbors(i)) {
      const double df = f(n.vertex) - fx;
      lf += df * n.weight;
      rhs.add(df * (h(n.vertex) - hx) * n.weight);
    }
    lhs.add(lf * hx);  // (Lf)(x) mu(x) = sum_y w (f(y) - f(x))
  }
  return {lhs.total(), -0.5 * rhs.total()};
}

// --- convex maps -----------------------------------------------------------

ConvexMap ConvexMap::quarter_power(double p, double alpha) {
  if (!(p >= 2.0)) throw ParameterError("(t^2+alpha)^{p/4} needs p >= 2 to be convex");
  if (!(alpha > 0.0)) throw ParameterError("alpha must be positive");
  return ConvexMap(
      [p, alpha](double t) { return std::pow(t * t + alpha, p / 4.0); },
      [p, alpha](double t) { return 0.5 * p * t * std::pow(t * t + alpha, p / 4.0 - 1.0); },
      "quarter_power", false);
}

ConvexMap ConvexMap::half_power(double p, double alpha) {
  if (!(p >= 1.0)) throw ParameterError("(t^2+alpha)^{p/2} needs p >= 1 to be convex");
  if (!(alpha > 0.0)) throw ParameterError("alpha must be positive");
  return ConvexMap(
      [p, alpha](double t) { return std::pow(t * t + alpha, p / 2.0); },
      [p, alpha](double t) { return p * t * std::pow(t * t + alpha, p / 2.0 - 1.0); },
      "half_power", false);
}

ConvexMap ConvexMap::linear() {
  return ConvexMap([](double t) { return t; }, [](double) { return 1.0; }, "linear", false);
}

ConvexMap ConvexMap::square() {
  return ConvexMap([](double t) { return t * t; }, [](double t) { return 2.0 * t; }, "square", false);
}

ConvexMap ConvexMap::custom(Scalar value, Scalar derivative, std::string name) {
  return ConvexMap(std::move(value), std::move(derivative), std::move(name), true);
}

void ConvexMap::certify(double lo, double hi) const {
  constexpr int kPoints = 1000;
  if (!(hi > lo)) {
    lo -= 1.0;
    hi += 1.0;
  }
  const double h = (hi - lo) / (kPoints - 1);
  for (int i = 1; i + 1 < kPoints; ++i) {
    const double t = lo + i * h;
    const double second = value_(t - h) - 2.0 * value_(t) + value_(t + h);
    if (second < -1e-12)
      throw PreconditionError("map '" + name_ + "' is not convex near t = " + format_double(t) +
                              " (second difference " + format_double(second) + ")");
  }
}

SidePair convexity_inequality(const Graph& g, const GraphFunction& u, const ConvexMap& psi,
                              const VertexId& x) {
  const auto ns = g.neighbors(x);
  const double ux = u(x);
  if (psi.needs_certificate()) {
    double lo = ux, hi = ux;
    for (const auto& n : ns) {
      lo = std::min(lo, u(n.vertex));
      hi = std::max(hi, u(n.vertex));
    }
    psi.certify(lo, hi);
  }
  const double px = psi.value(ux);
  double lpsi = 0.0, lu = 0.0;
  for (const auto& n : ns) {
    const double uy = u(n.vertex);
    lpsi += (psi.value(uy) - px) * n.weight;
    lu += (uy - ux) * n.weight;
  }
  const double mu = g.measure(x);
  return {lpsi / mu, psi.derivative(ux) * (lu / mu)};
}

}  // namespace lpuniq
