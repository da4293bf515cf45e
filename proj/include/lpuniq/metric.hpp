#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lpuniq/graph.hpp"

namespace lpuniq {

enum class MetricKind {
  Combinatorial,  ///< hop count
  Scaled,         ///< scale * hop count
  EdgeLength,     ///< shortest path, edge length scale * min(Deg(x)^{-1/2}, Deg(y)^{-1/2})
  Custom,         ///< user oracle
};

/// Pseudometric on a graph, carried together with the graph it lives on.
///
/// Distances are pure; the single-source search cache is internal and guarded.
/// Jump size and intrinsic bounds may be declared, in which case the declared
/// values are used wherever a global constant is needed.
class PseudoMetric {
 public:
  using Oracle = std::function<double(const VertexId&, const VertexId&)>;

  static PseudoMetric combinatorial(GraphPtr g);
  static PseudoMetric scaled(GraphPtr g, double sigma);
  static PseudoMetric edge_length(GraphPtr g, double scale = 1.0);
  /// Custom oracles must satisfy the pseudometric axioms; ball() explores the
  /// graph through vertices inside the ball, which is complete for path metrics.
  static PseudoMetric custom(GraphPtr g, Oracle d, std::string name = "custom");

  /// Lattice Z^d: scale 1/sqrt(2d); regular tree b: scale 1/sqrt(b); otherwise
  /// the edge-length metric. The first two are intrinsic with bound exactly 1.
  static PseudoMetric family_default(GraphPtr g);

  double operator()(const VertexId& x, const VertexId& y) const { return distance(x, y); }
  double distance(const VertexId& x, const VertexId& y) const;

  /// Length assigned to a single edge by the edge-length metric.
  double step_length(const VertexId& x, const VertexId& y) const;

  const Graph& graph() const noexcept { return *graph_; }
  const GraphPtr& graph_ptr() const noexcept { return graph_; }
  MetricKind kind() const noexcept { return kind_; }
  double scale() const noexcept { return scale_; }
  std::string describe() const;

  /// Vertex-transitive family with a hop-count-based metric: one vertex
  /// determines every supremum, so region values are global.
  bool homogeneous() const;

  std::size_t vertex_budget() const noexcept { return budget_; }
  PseudoMetric& set_vertex_budget(std::size_t budget) {
    budget_ = budget;
    return *this;
  }

  PseudoMetric& declare_jump_size(double s) {
    declared_jump_ = s;
    return *this;
  }
  PseudoMetric& declare_intrinsic_bound(double q, double bound);
  std::optional<double> declared_jump_size() const { return declared_jump_; }
  std::optional<double> declared_intrinsic_bound(double q) const;

 private:
  struct Cache;
  PseudoMetric(GraphPtr g, MetricKind kind, double scale);

  double hops(const VertexId& x, const VertexId& y) const;
  double shortest_path(const VertexId& x, const VertexId& y) const;

  GraphPtr graph_;
  MetricKind kind_;
  double scale_ = 1.0;
  Oracle custom_;
  std::string name_;
  std::size_t budget_ = 10'000'000;
  std::optional<double> declared_jump_;
  std::vector<std::pair<double, double>> declared_bounds_;
  std::shared_ptr<Cache> cache_;
};

/// B_r(x0) = {x : d(x, x0) < r}, canonical order. Throws BudgetExceeded when
/// the expansion visits more vertices than the metric's budget.
std::vector<VertexId> ball(const PseudoMetric& m, const VertexId& x0, double r);

/// materialize(ball(...)).
GraphRegion ball_region(const PseudoMetric& m, const VertexId& x0, double r);

/// A supremum evaluated on a region; exact when the family is homogeneous,
/// otherwise a lower bound for the global value.
struct MetricBound {
  double value = 0.0;
  bool exact = false;
};

/// Largest d(x, y) over internal edges with positive weight.
MetricBound jump_size(const PseudoMetric& m, const GraphRegion& region);

/// max_x (1/mu(x)) sum_y w(x,y) d(x,y)^q over region vertices, using full
/// neighbor sets.
MetricBound intrinsic_bound(const PseudoMetric& m, double q, const GraphRegion& region);

struct DistanceLaplacianBound {
  double value = 0.0;   ///< max over the region of |Laplacian of d(., x0)|
  double c0 = 0.0;      ///< 1-intrinsic bound on the same region
  bool within_bound = false;
};

DistanceLaplacianBound distance_laplacian_bound(const PseudoMetric& m, const VertexId& x0,
                                                const GraphRegion& region);

/// Triangle-inequality audit over random triples of the region.
VerificationReport check_triangle_inequality(const PseudoMetric& m, const GraphRegion& region,
                                             std::size_t samples, std::uint64_t seed,
                                             double rel_tol = 1e-12);

}  // namespace lpuniq
