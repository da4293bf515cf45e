#include "lpuniq/weighted.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lpuniq/errors.hpp"
#include "lpuniq/numerics.hpp"

namespace lpuniq {

namespace {

struct Placed {
  double distance;
  VertexId vertex;
};

// Vertices of the largest ball sorted by distance to x0 (ties in canonical order).
std::vector<Placed> place(const PseudoMetric& m, const VertexId& x0, double r) {
  std::vector<Placed> out;
  for (auto& v : ball(m, x0, r)) {
    const double d = m.distance(v, x0);
    out.push_back({d, std::move(v)});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Placed& a, const Placed& b) { return a.distance < b.distance; });
  return out;
}

void require_increasing(const std::vector<double>& radii, std::size_t min_count) {
  if (radii.size() < min_count)
    throw ParameterError("radius schedule needs at least " + std::to_string(min_count) + " entries");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] >= 0.0) || !std::isfinite(radii[i]))
      throw ParameterError("radii must be finite and nonnegative");
    if (i && !(radii[i] > radii[i - 1])) throw ParameterError("radii must be strictly increasing");
  }
}

}  // namespace

double WeightFamily::operator()(const VertexId& x) const {
  if (!(rate > 0.0)) throw ParameterError("weight rate must be positive");
  return std::exp(-rate * metric.distance(x, x0));
}

double truncated_lp_norm(const GraphFunction& u, double p, const WeightFamily& w, double R) {
  if (!(p >= 1.0)) throw ParameterError("exponent p must be >= 1");
  const Graph& g = w.metric.graph();
  Accumulator sum;
  for (const auto& x : ball(w.metric, w.x0, R)) {
    const double ux = u(x);
    if (ux == 0.0) continue;
    sum.add(std::pow(std::abs(ux), p) * w(x) * g.measure(x));
  }
  return sum.total();
}

std::string to_string(GrowthVerdict v) {
  switch (v) {
    case GrowthVerdict::Bounded: return "bounded";
    case GrowthVerdict::Exponential: return "exponential";
    case GrowthVerdict::SuperExponential: return "super_exponential";
  }
  return "unknown";
}

std::string to_string(SummabilityVerdict v) {
  return v == SummabilityVerdict::Summable ? "summable" : "not_summable_or_inconclusive";
}

GrowthEstimate growth_estimate(const GraphFunction& u, double p, const VertexId& x0,
                               const PseudoMetric& m, const std::vector<double>& radii) {
  if (!(p >= 1.0)) throw ParameterError("exponent p must be >= 1");
  require_increasing(radii, 3);
  const Graph& g = m.graph();
  const auto placed = place(m, x0, radii.back());

  GrowthEstimate est;
  est.radii = radii;
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  // Running log-sum kept as shift + log(scaled) so nothing overflows.
  double shift = kNegInf, scaled = 0.0;
  std::size_t next = 0;
  for (double R : radii) {
    for (; next < placed.size() && placed[next].distance < R; ++next) {
      const double ux = u(placed[next].vertex);
      if (!std::isfinite(ux)) {
        if (!est.overflow_radius) est.overflow_radius = R;
        continue;
      }
      if (ux == 0.0) continue;
      const double term = p * std::log(std::abs(ux)) + std::log(g.measure(placed[next].vertex));
      if (term > shift) {
        scaled = scaled * std::exp(shift - term) + 1.0;
        shift = term;
      } else {
        scaled += std::exp(term - shift);
      }
    }
    const double log_s = scaled > 0.0 ? shift + std::log(scaled) : kNegInf;
    est.log_partial_sums.push_back(log_s);
    est.partial_sums.push_back(std::exp(log_s));
  }

  std::vector<double> xs, ys;
  for (std::size_t i = radii.size() / 2; i < radii.size(); ++i)
    if (std::isfinite(est.log_partial_sums[i])) {
      xs.push_back(radii[i]);
      ys.push_back(est.log_partial_sums[i]);
    }
  if (xs.size() >= 2) {
    const auto fit = least_squares(xs, ys);
    est.beta_hat = fit.slope;
    est.residual = fit.residual;
  }
  if (est.overflow_radius)
    est.verdict = GrowthVerdict::SuperExponential;
  else
    est.verdict = est.beta_hat < 1e-6 ? GrowthVerdict::Bounded : GrowthVerdict::Exponential;
  return est;
}

SummabilityCheck summable_weight_check(const WeightFamily& w, const std::vector<double>& radii) {
  require_increasing(radii, 1);
  const Graph& g = w.metric.graph();
  const auto placed = place(w.metric, w.x0, radii.back());

  SummabilityCheck out;
  out.radii = radii;
  double total = 0.0;
  std::size_t next = 0;
  for (double R : radii) {
    Accumulator shell;
    for (; next < placed.size() && placed[next].distance < R; ++next)
      shell.add(std::exp(-w.rate * placed[next].distance) * g.measure(placed[next].vertex));
    total += shell.total();
    out.partial_sums.push_back(total);
  }
  for (std::size_t i = 1; i < out.partial_sums.size(); ++i) {
    const double prev = i == 1 ? out.partial_sums[0] : out.partial_sums[i - 1] - out.partial_sums[i - 2];
    const double cur = out.partial_sums[i] - out.partial_sums[i - 1];
    out.increment_ratios.push_back(prev > 0.0 ? cur / prev : (cur > 0.0 ? std::numeric_limits<double>::infinity() : 0.0));
  }
  constexpr std::size_t kWindow = 5;
  if (out.increment_ratios.size() >= kWindow &&
      std::all_of(out.increment_ratios.end() - kWindow, out.increment_ratios.end(),
                  [](double r) { return r < 1.0; }))
    out.verdict = SummabilityVerdict::Summable;
  return out;
}

}  // namespace lpuniq
