#pragma once

#include "lpuniq/function.hpp"
#include "lpuniq/graph.hpp"
#include "lpuniq/metric.hpp"
#include "lpuniq/numerics.hpp"
#include "lpuniq/report.hpp"
#include "lpuniq/schrodinger.hpp"

namespace lpuniq {

/// Parameters of the test functions and of the two uniqueness settings:
/// the weighted setting (p >= 2, target rate beta) and the dual setting
/// (any p >= 1, 1-intrinsic bound C0).
struct TestFunctionParams {
  VertexId x0;
  double alpha = 1.0;  ///< decay rate of xi and zeta
  double R = 1.0;      ///< cutoff radius
  double delta = 0.25; ///< ramp width as a fraction of R
  double s = 0.0;      ///< jump size
  double C0 = 0.0;     ///< 1-intrinsic bound, 0 when unknown
  double p = 2.0;
  double c0 = 1.0;     ///< inf V
  double beta = 0.0;   ///< target weight rate

  /// Throws ParameterError naming the first violated inequality among
  /// beta^2 e^{2s beta} < 2 c0 p, alpha^2 e^{2s alpha} < 2 c0 p, alpha > beta,
  /// 0 < delta < 1/2 - beta/(2 alpha), R > max{2s/(1-2 delta), 1}.
  void require_weighted_setting() const;
  /// Throws ParameterError unless C0 alpha e^{s alpha} < c0 p.
  void require_dual_setting() const;
};

/// eta(x) = min{[R - s - d(x0, x)]_+ / (delta R), 1}; support is B_{R-s}(x0).
GraphFunction cutoff_eta(const TestFunctionParams& tp, const PseudoMetric& m);
/// xi(x) = -alpha [d(x, x0) - delta R]_+. With increasing = true the sign is
/// flipped, which breaks the monotone compatibility with eta.
GraphFunction exponent_xi(const TestFunctionParams& tp, const PseudoMetric& m, bool increasing = false);
/// zeta(x) = exp(-alpha d(x, x0)).
GraphFunction supersolution_zeta(const TestFunctionParams& tp, const PseudoMetric& m);

/// alpha^2/2 e^{2 s alpha} - c0 p.
double h_constant(double alpha, double s, double c0, double p);
/// C0 alpha e^{alpha s} - p c0.
double k_constant(double alpha, double s, double C0, double c0, double p);
/// Unique beta* > 0 with beta*^2 e^{2 s beta*} = 2 c0 p.
double beta_threshold(double c0, double p, double s);
/// Unique alpha* > 0 with C0 alpha* e^{s alpha*} = c0 p.
double alpha_threshold(double c0, double p, double s, double C0);

/// Deterministic parameters for the weighted setting: alpha = (beta + beta*)/2,
/// delta = (1/2 - beta/(2 alpha))/2 and the strict lower bound on R.
struct ParameterChoice {
  double beta = 0.0;
  double beta_star = 0.0;
  double alpha = 0.0;
  double delta = 0.0;
  double radius_floor = 1.0;  ///< R must exceed this

  /// max(target, a radius just above the floor).
  double radius(double target) const;
};

/// Requires 0 < beta < beta*. p >= 1 is accepted so the same recipe can
/// supply cutoff parameters in the dual setting.
ParameterChoice select_parameters(double c0, double p, double s, double beta);

/// Per-vertex (alpha^2/2 e^{2s alpha} - c0 p) mu(x) against
/// 1/2 sum_y w (1 - e^{xi(y)-xi(x)})^2 - p V mu, full neighborhoods.
VerificationReport check_xi_energy(const PseudoMetric& m, const Potential& V,
                                   const TestFunctionParams& tp, const GraphRegion& region,
                                   const Tolerance& tol = {});

/// Gradient bounds for eta: edge bound, squared-gradient sum and Laplacian
/// bound (the last only when tp.C0 > 0), each vanishing off the annulus
/// (1 - delta) R - 2s <= d(x, x0) <= R.
VerificationReport check_cutoff_gradient(const PseudoMetric& m, const TestFunctionParams& tp,
                                         const GraphRegion& region, const Tolerance& tol = {});

/// Per-vertex L zeta - p V zeta <= (C0 alpha e^{alpha s} - p c0) zeta.
VerificationReport check_zeta_supersolution(const PseudoMetric& m, const Potential& V,
                                            const TestFunctionParams& tp, const GraphRegion& region,
                                            const Tolerance& tol = {});

/// Sign check of [eta^2(y) - eta^2(x)][e^{xi(y)} - e^{xi(x)}] on every edge at a region vertex.
VerificationReport check_monotone_compatibility(const Graph& g, const GraphFunction& eta,
                                                const GraphFunction& xi, const GraphRegion& region,
                                                const Tolerance& tol = {});

/// Energy estimate for a solution u and p >= 2:
///   1/2 sum_x |u|^p eta^2 e^xi {V p mu - 1/2 sum_y w (1 - e^{xi(y)-xi(x)})^2}
///     <= sum_{x,y} |u(x)|^p e^{xi(y)} (eta(y) - eta(x))^2 w.
/// Requires eta >= 0 with finite support S, the region to contain S and its
/// neighbors, u to solve the equation there (residual 1e-10), and the
/// compatibility sign condition; otherwise PreconditionError.
/// Quantities "lhs", "rhs", "margin", and "margin_doubled" (both sides times 2).
VerificationReport check_energy_estimate(const Graph& g, const GraphFunction& u, const Potential& V,
                                         const GraphFunction& eta, const GraphFunction& xi, double p,
                                         const GraphRegion& region, const Tolerance& tol = {});

/// sum_x |u|^p {-Lv + p V v} mu <= 0 for v >= 0 with finite support and a
/// solution u on supp v. The region must contain the two-step neighborhood of supp v.
VerificationReport check_dual_estimate(const Graph& g, const GraphFunction& u, const Potential& V,
                                       const GraphFunction& v, double p, const GraphRegion& region,
                                       const Tolerance& tol = {});

}  // namespace lpuniq
