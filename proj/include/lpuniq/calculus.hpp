#pragma once

#include <functional>
#include <string>

#include "lpuniq/function.hpp"
#include "lpuniq/graph.hpp"

namespace lpuniq {

/// Two evaluations of the same quantity (identities) or the two sides of an
/// inequality lhs <= rhs / lhs >= rhs, depending on the operation.
struct SidePair {
  double lhs = 0.0;
  double rhs = 0.0;

  double gap() const { return lhs - rhs; }
  /// |lhs - rhs| <= rel * (1 + max(|lhs|, |rhs|)).
  bool agrees(double rel) const;
};

/// f(y) - f(x).
double difference(const GraphFunction& f, const VertexId& x, const VertexId& y);

/// (1/mu(x)) sum_y w(x,y) (f(y) - f(x))^2.
double gradient_squared(const Graph& g, const GraphFunction& f, const VertexId& x);

/// (1/mu(x)) sum_y (f(y) - f(x)) w(x,y).
double laplacian(const Graph& g, const GraphFunction& f, const VertexId& x);

/// Difference of a product in two ways: lhs = (fh)(y) - (fh)(x),
/// rhs = f(x) (h(y) - h(x)) + (f(y) - f(x)) h(y).
SidePair product_rule(const GraphFunction& f, const GraphFunction& h, const VertexId& x,
                      const VertexId& y);

/// lhs = Laplacian of f*h at x; rhs = f Lh + h Lf + (1/mu) sum_y w (f(y)-f(x))(h(y)-h(x)).
SidePair laplacian_of_product(const Graph& g, const GraphFunction& f, const GraphFunction& h,
                              const VertexId& x);

/// Summation by parts over a region.
///
/// lhs = sum_x Lf(x) h(x) mu(x), rhs = -1/2 sum_{x,y} (f(y)-f(x))(h(y)-h(x)) w(x,y),
/// ordered pairs with x in the region and y any neighbor. At least one of f, h
/// must have finite support, and the region must contain that support together
/// with its one-step neighborhood; otherwise PreconditionError.
SidePair integration_by_parts(const Graph& g, const GraphFunction& f, const GraphFunction& h,
                              const GraphRegion& region);

/// Scalar map psi with derivative, used in the convexity inequality.
class ConvexMap {
 public:
  using Scalar = std::function<double(double)>;

  /// (t^2 + alpha)^{p/4}; convex for p >= 2.
  static ConvexMap quarter_power(double p, double alpha);
  /// (t^2 + alpha)^{p/2}; convex for p >= 1.
  static ConvexMap half_power(double p, double alpha);
  static ConvexMap linear();
  static ConvexMap square();
  /// User-supplied map; convexity is checked on the observed value range
  /// before use.
  static ConvexMap custom(Scalar value, Scalar derivative, std::string name);

  double value(double t) const { return value_(t); }
  double derivative(double t) const { return derivative_(t); }
  const std::string& name() const noexcept { return name_; }
  bool needs_certificate() const noexcept { return needs_certificate_; }

  /// Second-difference test on a 1000-point grid over [lo, hi]; throws
  /// PreconditionError when a second difference falls below -1e-12.
  void certify(double lo, double hi) const;

 private:
  ConvexMap(Scalar v, Scalar d, std::string name, bool certificate)
      : value_(std::move(v)), derivative_(std::move(d)), name_(std::move(name)),
        needs_certificate_(certificate) {}
  Scalar value_;
  Scalar derivative_;
  std::string name_;
  bool needs_certificate_ = false;
};

/// lhs = Laplacian of psi(u) at x, rhs = psi'(u(x)) Lu(x); convexity gives lhs >= rhs.
SidePair convexity_inequality(const Graph& g, const GraphFunction& u, const ConvexMap& psi,
                              const VertexId& x);

}  // namespace lpuniq
