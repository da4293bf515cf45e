#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "lpuniq/function.hpp"
#include "lpuniq/graph.hpp"
#include "lpuniq/numerics.hpp"
#include "lpuniq/report.hpp"

namespace lpuniq {

/// Finitely supported function with 1..max_support values drawn uniformly
/// from [lo, hi] on vertices picked from pool.
GraphFunction random_finite_function(Rng& rng, const std::vector<VertexId>& pool,
                                     std::size_t max_support, double lo, double hi);

/// Closed-form function with pseudo-random values in [lo, hi] (hash of the
/// vertex text and seed), defined everywhere.
GraphFunction hashed_function(std::uint64_t seed, double lo, double hi);

struct SuiteOptions {
  std::size_t pairs = 100;
  std::uint64_t seed = 1;
  double pool_radius = 4.0;  ///< hop radius around the base vertex for supports
  std::size_t max_support = 12;
};

/// Summation by parts and the product Laplacian identity on random pairs.
/// Sites fail when |lhs - rhs| > rel (1 + max(|lhs|, |rhs|)).
VerificationReport integration_by_parts_suite(const Graph& g, const SuiteOptions& opts, double rel = 1e-12);
VerificationReport product_laplacian_suite(const Graph& g, const SuiteOptions& opts, double rel = 1e-12);

/// Convexity inequality for (t^2+a)^{p/4} (p in {2,3,4}) and (t^2+a)^{p/2}
/// (p in {1,1.5,2}), a in {1e-6,1e-3,1,10}, random u in [-10,10] on the pool.
/// Sites fail when L psi(u) - psi'(u) Lu < -abs_tol.
VerificationReport convexity_suite(const Graph& g, const SuiteOptions& opts, double abs_tol = 1e-10);

}  // namespace lpuniq
