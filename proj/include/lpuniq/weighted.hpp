#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lpuniq/function.hpp"
#include "lpuniq/metric.hpp"

namespace lpuniq {

/// phi(x) = exp(-rate * d(x, x0)).
struct WeightFamily {
  VertexId x0;
  double rate = 1.0;
  PseudoMetric metric;

  double operator()(const VertexId& x) const;
};

/// sum over B_R(x0) of |u|^p phi mu, the p-th power of the truncated weighted norm.
double truncated_lp_norm(const GraphFunction& u, double p, const WeightFamily& w, double R);

enum class GrowthVerdict { Bounded, Exponential, SuperExponential };
std::string to_string(GrowthVerdict v);

/// Partial sums S(R) = sum over B_R(x0) of |u|^p mu along a radius schedule,
/// with the least-squares slope of log S over the last half of the schedule.
struct GrowthEstimate {
  std::vector<double> radii;
  std::vector<double> partial_sums;      ///< may be +inf when the raw sum overflows
  std::vector<double> log_partial_sums;  ///< always finite unless the sum is 0 or u is
  double beta_hat = 0.0;
  double residual = 0.0;
  GrowthVerdict verdict = GrowthVerdict::Bounded;
  std::optional<double> overflow_radius;  ///< first radius with a non-finite |u|
};

GrowthEstimate growth_estimate(const GraphFunction& u, double p, const VertexId& x0,
                               const PseudoMetric& m, const std::vector<double>& radii);

enum class SummabilityVerdict { Summable, Inconclusive };
std::string to_string(SummabilityVerdict v);

struct SummabilityCheck {
  std::vector<double> radii;
  std::vector<double> partial_sums;  ///< sum over B_R of phi mu
  std::vector<double> increment_ratios;
  SummabilityVerdict verdict = SummabilityVerdict::Inconclusive;
};

/// Summable when the increments of the partial sums shrink geometrically
/// (ratio < 1) over the last five radii.
SummabilityCheck summable_weight_check(const WeightFamily& w, const std::vector<double>& radii);

}  // namespace lpuniq
