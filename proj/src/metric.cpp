#include "lpuniq/metric.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <mutex>
#include <queue>
#include <unordered_map>

#include "lpuniq/errors.hpp"
#include "lpuniq/numerics.hpp"

namespace lpuniq {

using DistanceMap = std::unordered_map<VertexId, double, VertexHash>;

// Single-source results for finite graphs, where a search exhausts the
// component and the whole map can be kept.
struct PseudoMetric::Cache {
  std::mutex mutex;
  std::unordered_map<VertexId, std::shared_ptr<const DistanceMap>, VertexHash> hops;
  std::unordered_map<VertexId, std::shared_ptr<const DistanceMap>, VertexHash> paths;
};

PseudoMetric::PseudoMetric(GraphPtr g, MetricKind kind, double scale)
    : graph_(std::move(g)), kind_(kind), scale_(scale), cache_(std::make_shared<Cache>()) {
  if (!graph_) throw ParameterError("metric needs a graph");
  if (!(scale > 0.0) || !std::isfinite(scale)) throw ParameterError("metric scale must be positive");
}

PseudoMetric PseudoMetric::combinatorial(GraphPtr g) {
  return PseudoMetric(std::move(g), MetricKind::Combinatorial, 1.0);
}

PseudoMetric PseudoMetric::scaled(GraphPtr g, double sigma) {
  return PseudoMetric(std::move(g), MetricKind::Scaled, sigma);
}

PseudoMetric PseudoMetric::edge_length(GraphPtr g, double scale) {
  return PseudoMetric(std::move(g), MetricKind::EdgeLength, scale);
}

PseudoMetric PseudoMetric::custom(GraphPtr g, Oracle d, std::string name) {
  PseudoMetric m(std::move(g), MetricKind::Custom, 1.0);
  m.custom_ = std::move(d);
  m.name_ = std::move(name);
  return m;
}

PseudoMetric PseudoMetric::family_default(GraphPtr g) {
  const auto desc = g->descriptor();
  switch (desc.kind) {
    case FamilyDescriptor::Kind::Lattice:
      return scaled(std::move(g), 1.0 / std::sqrt(2.0 * desc.dimension));
    case FamilyDescriptor::Kind::RegularTree:
      return scaled(std::move(g), 1.0 / std::sqrt(static_cast<double>(desc.branching)));
    default:
      return edge_length(std::move(g));
  }
}

std::string PseudoMetric::describe() const {
  switch (kind_) {
    case MetricKind::Combinatorial: return "combinatorial";
    case MetricKind::Scaled: return "scaled(" + format_double(scale_) + ")";
    case MetricKind::EdgeLength: return "edge_length(" + format_double(scale_) + ")";
    case MetricKind::Custom: return name_;
  }
  return "unknown";
}

bool PseudoMetric::homogeneous() const {
  return graph_->vertex_transitive() &&
         (kind_ == MetricKind::Combinatorial || kind_ == MetricKind::Scaled);
}

PseudoMetric& PseudoMetric::declare_intrinsic_bound(double q, double bound) {
  for (auto& [dq, b] : declared_bounds_)
    if (dq == q) {
      b = bound;
      return *this;
    }
  declared_bounds_.emplace_back(q, bound);
  return *this;
}

std::optional<double> PseudoMetric::declared_intrinsic_bound(double q) const {
  for (const auto& [dq, b] : declared_bounds_)
    if (dq == q) return b;
  return std::nullopt;
}

double PseudoMetric::step_length(const VertexId& x, const VertexId& y) const {
  const double dx = degree(*graph_, x).Deg;
  const double dy = degree(*graph_, y).Deg;
  return scale_ / std::sqrt(std::max(dx, dy));
}

double PseudoMetric::hops(const VertexId& x, const VertexId& y) const {
  if (auto h = graph_->hop_distance(x, y)) return static_cast<double>(*h);
  if (x == y) return 0.0;

  if (graph_->finite()) {
    std::shared_ptr<const DistanceMap> map;
    {
      std::lock_guard lock(cache_->mutex);
      if (auto it = cache_->hops.find(x); it != cache_->hops.end()) map = it->second;
    }
    if (!map) {
      auto full = std::make_shared<DistanceMap>();
      std::deque<VertexId> queue{x};
      (*full)[x] = 0.0;
      while (!queue.empty()) {
        auto v = queue.front();
        queue.pop_front();
        const double dv = full->at(v);
        for (auto& n : graph_->neighbors(v))
          if (n.weight > 0.0 && full->emplace(n.vertex, dv + 1.0).second) queue.push_back(n.vertex);
      }
      std::lock_guard lock(cache_->mutex);
      map = cache_->hops.emplace(x, std::move(full)).first->second;
    }
    auto it = map->find(y);
    return it == map->end() ? std::numeric_limits<double>::infinity() : it->second;
  }

  DistanceMap seen{{x, 0.0}};
  std::deque<VertexId> queue{x};
  while (!queue.empty()) {
    auto v = queue.front();
    queue.pop_front();
    const double dv = seen.at(v);
    for (auto& n : graph_->neighbors(v)) {
      if (!(n.weight > 0.0)) continue;
      if (n.vertex == y) return dv + 1.0;
      if (seen.emplace(n.vertex, dv + 1.0).second) queue.push_back(n.vertex);
    }
    if (seen.size() > budget_)
      throw BudgetExceeded("hop distance search exceeded " + std::to_string(budget_) + " vertices");
  }
  return std::numeric_limits<double>::infinity();
}

double PseudoMetric::shortest_path(const VertexId& x, const VertexId& y) const {
  if (x == y) return 0.0;
  if (graph_->finite()) {
    std::lock_guard lock(cache_->mutex);
    if (auto it = cache_->paths.find(x); it != cache_->paths.end()) {
      auto f = it->second->find(y);
      return f == it->second->end() ? std::numeric_limits<double>::infinity() : f->second;
    }
  }
  using Item = std::pair<double, VertexId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  auto settled = std::make_shared<DistanceMap>();
  DistanceMap best{{x, 0.0}};
  heap.emplace(0.0, x);
  const bool keep_all = graph_->finite();
  while (!heap.empty()) {
    auto [dv, v] = heap.top();
    heap.pop();
    if (settled->count(v)) continue;
    (*settled)[v] = dv;
    if (v == y && !keep_all) return dv;
    if (settled->size() > budget_)
      throw BudgetExceeded("shortest path search exceeded " + std::to_string(budget_) + " vertices");
    for (const auto& n : graph_->neighbors(v)) {
      if (!(n.weight > 0.0) || settled->count(n.vertex)) continue;
      const double cand = dv + step_length(v, n.vertex);
      auto it = best.find(n.vertex);
      if (it == best.end() || cand < it->second) {
        best[n.vertex] = cand;
        heap.emplace(cand, n.vertex);
      }
    }
  }
  if (keep_all) {
    std::lock_guard lock(cache_->mutex);
    cache_->paths.emplace(x, settled);
  }
  auto f = settled->find(y);
  return f == settled->end() ? std::numeric_limits<double>::infinity() : f->second;
}

double PseudoMetric::distance(const VertexId& x, const VertexId& y) const {
  switch (kind_) {
    case MetricKind::Combinatorial: return hops(x, y);
    case MetricKind::Scaled: return scale_ * hops(x, y);
    case MetricKind::EdgeLength: return shortest_path(x, y);
    case MetricKind::Custom: return custom_(x, y);
  }
  return 0.0;
}

// ---------------------------------------------------------------------------

std::vector<VertexId> ball(const PseudoMetric& m, const VertexId& x0, double r) {
  if (!std::isfinite(r) || r < 0.0) throw ParameterError("ball radius must be finite and >= 0");
  const Graph& g = m.graph();
  const std::size_t budget = m.vertex_budget();
  std::vector<VertexId> out;
  auto over_budget = [&](std::size_t n) {
    if (n > budget)
      throw BudgetExceeded("ball of radius " + format_double(r) + " around " + x0.to_string() +
                           " exceeded the vertex budget " + std::to_string(budget));
  };

  switch (m.kind()) {
    case MetricKind::Combinatorial:
    case MetricKind::Scaled: {
      const double step = m.kind() == MetricKind::Scaled ? m.scale() : 1.0;
      if (!(0.0 < r)) break;
      DistanceMap seen{{x0, 0.0}};
      std::deque<VertexId> queue{x0};
      out.push_back(x0);
      while (!queue.empty()) {
        auto v = queue.front();
        queue.pop_front();
        const double hv = seen.at(v);
        if (!(step * (hv + 1.0) < r)) continue;
        for (auto& n : g.neighbors(v)) {
          if (!(n.weight > 0.0)) continue;
          if (seen.emplace(n.vertex, hv + 1.0).second) {
            out.push_back(n.vertex);
            queue.push_back(std::move(n.vertex));
            over_budget(out.size());
          }
        }
      }
      break;
    }
    case MetricKind::EdgeLength: {
      if (!(0.0 < r)) break;
      using Item = std::pair<double, VertexId>;
      std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
      DistanceMap best{{x0, 0.0}};
      std::unordered_map<VertexId, bool, VertexHash> settled;
      heap.emplace(0.0, x0);
      while (!heap.empty()) {
        auto [dv, v] = heap.top();
        heap.pop();
        if (settled.count(v)) continue;
        settled[v] = true;
        out.push_back(v);
        over_budget(out.size());
        for (const auto& n : g.neighbors(v)) {
          if (!(n.weight > 0.0) || settled.count(n.vertex)) continue;
          const double cand = dv + m.step_length(v, n.vertex);
          if (!(cand < r)) continue;
          auto it = best.find(n.vertex);
          if (it == best.end() || cand < it->second) {
            best[n.vertex] = cand;
            heap.emplace(cand, n.vertex);
          }
        }
      }
      break;
    }
    case MetricKind::Custom: {
      if (!(m.distance(x0, x0) < r)) break;
      std::unordered_map<VertexId, bool, VertexHash> seen{{x0, true}};
      std::deque<VertexId> queue{x0};
      out.push_back(x0);
      while (!queue.empty()) {
        auto v = queue.front();
        queue.pop_front();
        for (auto& n : g.neighbors(v)) {
          if (seen.count(n.vertex)) continue;
          seen[n.vertex] = true;
          over_budget(seen.size());
          if (m.distance(n.vertex, x0) < r) {
            out.push_back(n.vertex);
            queue.push_back(std::move(n.vertex));
          }
        }
      }
      break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

GraphRegion ball_region(const PseudoMetric& m, const VertexId& x0, double r) {
  const auto vs = ball(m, x0, r);
  return materialize(m.graph(), vs);
}

MetricBound jump_size(const PseudoMetric& m, const GraphRegion& region) {
  bool any = false;
  double s = 0.0;
  for (std::size_t i = 0; i < region.size(); ++i)
    for (const auto& a : region.internal(i)) {
      if (!(a.weight > 0.0)) continue;
      any = true;
      s = std::max(s, m.distance(region.vertex(i), region.vertex(a.target)));
    }
  if (!any) throw PreconditionError("jump size is undefined on a region without edges");
  return {s, m.homogeneous()};
}

MetricBound intrinsic_bound(const PseudoMetric& m, double q, const GraphRegion& region) {
  if (!(q >= 1.0)) throw ParameterError("intrinsic exponent q must be >= 1");
  double best = 0.0;
  for (std::size_t i = 0; i < region.size(); ++i) {
    const auto& x = region.vertex(i);
    double sum = 0.0;
    for (const auto& n : region.full_neighbors(i)) sum += n.weight * std::pow(m.distance(x, n.vertex), q);
    best = std::max(best, sum / region.measure(i));
  }
  return {best, m.homogeneous()};
}

DistanceLaplacianBound distance_laplacian_bound(const PseudoMetric& m, const VertexId& x0,
                                                const GraphRegion& region) {
  DistanceLaplacianBound out;
  for (std::size_t i = 0; i < region.size(); ++i) {
    const auto& x = region.vertex(i);
    const double dx = m.distance(x, x0);
    double sum = 0.0;
    for (const auto& n : region.full_neighbors(i)) sum += n.weight * (m.distance(n.vertex, x0) - dx);
    out.value = std::max(out.value, std::abs(sum / region.measure(i)));
  }
  out.c0 = region.empty() ? 0.0 : intrinsic_bound(m, 1.0, region).value;
  out.within_bound = out.value <= out.c0 * (1.0 + 1e-12) + 1e-15;
  return out;
}

VerificationReport check_triangle_inequality(const PseudoMetric& m, const GraphRegion& region,
                                             std::size_t samples, std::uint64_t seed,
                                             double rel_tol) {
  VerificationReport report("triangle_inequality");
  report.set_param("samples", static_cast<double>(samples));
  if (region.empty()) return report;
  Rng rng(seed);
  for (std::size_t k = 0; k < samples; ++k) {
    const auto& x = region.vertex(rng.index(region.size()));
    const auto& y = region.vertex(rng.index(region.size()));
    const auto& z = region.vertex(rng.index(region.size()));
    const double dxy = m.distance(x, y);
    const double dxz = m.distance(x, z);
    const double dzy = m.distance(z, y);
    const double dyx = m.distance(y, x);
    const double tol = rel_tol * std::max(dxy, dxz + dzy);
    report.add(x.to_string() + "," + y.to_string() + "," + z.to_string(), dxz + dzy - dxy, tol);
    if (dxy != dyx) report.violation(x.to_string() + "~" + y.to_string(), "distance is not symmetric");
    if (m.distance(x, x) != 0.0) report.violation(x.to_string(), "d(x,x) is not zero");
  }
  return report;
}

}  // namespace lpuniq
