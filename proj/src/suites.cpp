#include "lpuniq/suites.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lpuniq/calculus.hpp"

namespace lpuniq {

namespace {

std::vector<VertexId> pool_of(const Graph& g, double radius) {
  const VertexId base = g.base_vertex();
  return neighborhood(g, std::span<const VertexId>(&base, 1), static_cast<int>(radius));
}

double identity_tolerance(const SidePair& s, double rel) {
  return rel * (1.0 + std::max(std::abs(s.lhs), std::abs(s.rhs)));
}

std::vector<VertexId> merged(std::span<const VertexId> a, std::span<const VertexId> b) {
  std::vector<VertexId> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

GraphFunction random_finite_function(Rng& rng, const std::vector<VertexId>& pool,
                                     std::size_t max_support, double lo, double hi) {
  const std::size_t k = 1 + rng.index(std::min(max_support, pool.size()));
  std::vector<std::size_t> picks(pool.size());
  for (std::size_t i = 0; i < picks.size(); ++i) picks[i] = i;
  // partial Fisher-Yates
  for (std::size_t i = 0; i < k; ++i) std::swap(picks[i], picks[i + rng.index(picks.size() - i)]);
  std::vector<std::pair<VertexId, double>> values;
  for (std::size_t i = 0; i < k; ++i) values.emplace_back(pool[picks[i]], rng.uniform(lo, hi));
  return GraphFunction::finite(std::move(values), Provenance::ClosedForm, "random");
}

GraphFunction hashed_function(std::uint64_t seed, double lo, double hi) {
  return GraphFunction::closed_form(
      [seed, lo, hi](const VertexId& x) {
        std::uint64_t h = 0xcbf29ce484222325ULL ^ seed;
        for (unsigned char c : x.to_string()) h = (h ^ c) * 0x100000001b3ULL;
        h ^= h >> 33;
        h *= 0xff51afd7ed558ccdULL;
        h ^= h >> 33;
        return lo + (hi - lo) * (static_cast<double>(h >> 11) * 0x1.0p-53);
      },
      "hashed");
}

VerificationReport integration_by_parts_suite(const Graph& g, const SuiteOptions& opts, double rel) {
  VerificationReport r("integration_by_parts");
  r.set_param("pairs", static_cast<double>(opts.pairs));
  r.set_param("seed", static_cast<double>(opts.seed));
  r.set_param("rel_tol", rel);
  Rng rng(opts.seed);
  const auto pool = pool_of(g, opts.pool_radius);
  double worst = 0.0;
  for (std::size_t k = 0; k < opts.pairs; ++k) {
    const GraphFunction f = random_finite_function(rng, pool, opts.max_support, -1.0, 1.0);
    // alternate between a second finite function and an everywhere-defined one
    const GraphFunction h = k % 2 == 0 ? random_finite_function(rng, pool, opts.max_support, -1.0, 1.0)
                                       : hashed_function(rng.next(), -1.0, 1.0);
    const auto support = h.has_finite_support() ? merged(f.support(), h.support())
                                                : std::vector<VertexId>(f.support().begin(), f.support().end());
    const GraphRegion region = materialize(g, neighborhood(g, support, 1));
    const SidePair s = integration_by_parts(g, f, h, region);
    const double gap = std::abs(s.gap());
    worst = std::max(worst, gap / (1.0 + std::max(std::abs(s.lhs), std::abs(s.rhs))));
    r.add("pair" + std::to_string(k), -gap, identity_tolerance(s, rel));
  }
  r.set_quantity("max_relative_gap", worst);
  return r;
}

VerificationReport product_laplacian_suite(const Graph& g, const SuiteOptions& opts, double rel) {
  VerificationReport r("product_laplacian");
  r.set_param("pairs", static_cast<double>(opts.pairs));
  r.set_param("seed", static_cast<double>(opts.seed));
  r.set_param("rel_tol", rel);
  Rng rng(opts.seed ^ 0x5bd1e995ULL);
  const auto pool = pool_of(g, opts.pool_radius);
  double worst = 0.0;
  for (std::size_t k = 0; k < opts.pairs; ++k) {
    const GraphFunction f = random_finite_function(rng, pool, opts.max_support, -1.0, 1.0);
    const GraphFunction h = k % 2 == 0 ? random_finite_function(rng, pool, opts.max_support, -1.0, 1.0)
                                       : hashed_function(rng.next(), -1.0, 1.0);
    for (const auto& x : neighborhood(g, f.support(), 1)) {
      const SidePair s = laplacian_of_product(g, f, h, x);
      const double gap = std::abs(s.gap());
      worst = std::max(worst, gap / (1.0 + std::max(std::abs(s.lhs), std::abs(s.rhs))));
      r.add("pair" + std::to_string(k) + "@" + x.to_string(), -gap, identity_tolerance(s, rel));
    }
  }
  r.set_quantity("max_relative_gap", worst);
  return r;
}

VerificationReport convexity_suite(const Graph& g, const SuiteOptions& opts, double abs_tol) {
  VerificationReport r("convexity");
  r.set_param("seed", static_cast<double>(opts.seed));
  r.set_param("abs_tol", abs_tol);
  Rng rng(opts.seed ^ 0x27d4eb2fULL);
  const auto pool = pool_of(g, opts.pool_radius);

  struct Entry {
    ConvexMap map;
    std::string label;
  };
  std::vector<Entry> maps;
  for (double a : {1e-6, 1e-3, 1.0, 10.0}) {
    for (double p : {2.0, 3.0, 4.0})
      maps.push_back({ConvexMap::quarter_power(p, a), "quarter(p=" + format_double(p) + ",a=" + format_double(a) + ")"});
    for (double p : {1.0, 1.5, 2.0})
      maps.push_back({ConvexMap::half_power(p, a), "half(p=" + format_double(p) + ",a=" + format_double(a) + ")"});
  }
  constexpr int kDraws = 5;
  double worst = 0.0;
  for (const auto& e : maps) {
    for (int t = 0; t < kDraws; ++t) {
      std::vector<std::pair<VertexId, double>> values;
      for (const auto& v : pool) values.emplace_back(v, rng.uniform(-10.0, 10.0));
      const GraphFunction u = GraphFunction::finite(std::move(values), Provenance::ClosedForm, "u");
      for (const auto& x : pool) {
        const SidePair s = convexity_inequality(g, u, e.map, x);
        worst = std::min(worst, s.gap());
        r.add(e.label + "#" + std::to_string(t) + "@" + x.to_string(), s.gap(), abs_tol);
      }
    }
  }
  r.set_quantity("min_gap", worst);
  return r;
}

}  // namespace lpuniq
