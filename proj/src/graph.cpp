#include "lpuniq/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <fstream>
#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_set>

#include "lpuniq/errors.hpp"
#include "lpuniq/numerics.hpp"

namespace lpuniq {

namespace {

void sort_neighbors(std::vector<Neighbor>& ns) {
  std::sort(ns.begin(), ns.end(),
            [](const Neighbor& a, const Neighbor& b) { return a.vertex < b.vertex; });
}

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

bool is_skippable(const std::string& line) {
  auto pos = line.find_first_not_of(" \t\r");
  return pos == std::string::npos || line[pos] == '#';
}

double parse_positive(const std::string& tok, const char* what, std::size_t line) {
  char* end = nullptr;
  const double v = std::strtod(tok.c_str(), &end);
  if (end != tok.c_str() + tok.size() || !std::isfinite(v))
    throw FormatError(std::string(what) + " '" + tok + "' is not a decimal number", line);
  if (!(v > 0.0)) throw FormatError(std::string(what) + " must be positive, got " + tok, line);
  return v;
}

}  // namespace

// ---------------------------------------------------------------------------

FamilyDescriptor FamilyDescriptor::parse(const std::string& text) {
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string rest = colon == std::string::npos ? std::string{} : text.substr(colon + 1);
  auto as_int = [&](const char* what) {
    try {
      std::size_t used = 0;
      int v = std::stoi(rest, &used);
      if (used != rest.size()) throw std::invalid_argument(what);
      return v;
    } catch (const std::exception&) {
      throw ParameterError("family '" + text + "': " + what + " must be an integer");
    }
  };
  if (head == "lattice") {
    const int d = as_int("dimension");
    if (d < 1) throw ParameterError("lattice dimension must be >= 1");
    return lattice(d);
  }
  if (head == "tree" || head == "regular_tree") {
    const int b = as_int("branching");
    if (b < 2) throw ParameterError("tree branching must be >= 2");
    return regular_tree(b);
  }
  if (head == "edge_list") {
    const auto comma = rest.find(',');
    if (comma == std::string::npos) return edge_list(rest);
    return edge_list(rest.substr(0, comma), rest.substr(comma + 1));
  }
  throw ParameterError("unknown graph family '" + text + "'");
}

std::string FamilyDescriptor::to_string() const {
  switch (kind) {
    case Kind::Lattice: return "lattice:" + std::to_string(dimension);
    case Kind::RegularTree: return "tree:" + std::to_string(branching);
    case Kind::EdgeList:
      return "edge_list:" + edge_file + (measure_file.empty() ? "" : "," + measure_file);
    case Kind::Custom: return "custom";
  }
  return "unknown";
}

double Graph::weight(const VertexId& x, const VertexId& y) const {
  for (const auto& n : neighbors(x))
    if (n.vertex == y) return n.weight;
  return 0.0;
}

// --- lattice ---------------------------------------------------------------

LatticeGraph::LatticeGraph(int dimension) : dim_(dimension) {
  if (dimension < 1) throw ParameterError("lattice dimension must be >= 1");
}

bool LatticeGraph::contains(const VertexId& x) const {
  return x.shape() == VertexId::Shape::Lattice && x.coords().size() == static_cast<std::size_t>(dim_);
}

std::vector<Neighbor> LatticeGraph::neighbors(const VertexId& x) const {
  if (!contains(x)) throw DomainError("vertex " + x.to_string() + " is not in Z^" + std::to_string(dim_));
  std::vector<Neighbor> out;
  out.reserve(2 * dim_);
  for (int i = 0; i < dim_; ++i) {
    for (int step : {-1, 1}) {
      auto c = x.coords();
      c[i] += step;
      out.push_back({VertexId::lattice(std::move(c)), 1.0});
    }
  }
  sort_neighbors(out);
  return out;
}

double LatticeGraph::measure(const VertexId& x) const {
  if (!contains(x)) throw DomainError("vertex " + x.to_string() + " is not in Z^" + std::to_string(dim_));
  return 1.0;
}

VertexId LatticeGraph::base_vertex() const {
  return VertexId::lattice(VertexId::Coords(dim_, 0));
}

std::optional<std::int64_t> LatticeGraph::hop_distance(const VertexId& x, const VertexId& y) const {
  std::int64_t d = 0;
  for (int i = 0; i < dim_; ++i) d += std::abs(x.coords()[i] - y.coords()[i]);
  return d;
}

// --- regular tree ----------------------------------------------------------

RegularTreeGraph::RegularTreeGraph(int branching) : b_(branching) {
  if (branching < 2) throw ParameterError("tree branching must be >= 2");
}

bool RegularTreeGraph::contains(const VertexId& x) const {
  if (x.shape() != VertexId::Shape::Word) return false;
  const auto& w = x.letters();
  for (std::size_t i = 0; i < w.size(); ++i) {
    const auto limit = static_cast<std::uint32_t>(i == 0 ? b_ : b_ - 1);
    if (w[i] >= limit) return false;
  }
  return true;
}

std::vector<Neighbor> RegularTreeGraph::neighbors(const VertexId& x) const {
  if (!contains(x)) throw DomainError("vertex " + x.to_string() + " is not in the tree");
  const auto& w = x.letters();
  std::vector<Neighbor> out;
  if (!w.empty()) out.push_back({VertexId::word({w.begin(), w.end() - 1}), 1.0});
  const int children = w.empty() ? b_ : b_ - 1;
  for (int c = 0; c < children; ++c) {
    auto child = w;
    child.push_back(static_cast<std::uint32_t>(c));
    out.push_back({VertexId::word(std::move(child)), 1.0});
  }
  sort_neighbors(out);
  return out;
}

double RegularTreeGraph::measure(const VertexId& x) const {
  if (!contains(x)) throw DomainError("vertex " + x.to_string() + " is not in the tree");
  return 1.0;
}

std::optional<std::int64_t> RegularTreeGraph::hop_distance(const VertexId& x, const VertexId& y) const {
  const auto& a = x.letters();
  const auto& b = y.letters();
  std::size_t common = 0;
  while (common < a.size() && common < b.size() && a[common] == b[common]) ++common;
  return static_cast<std::int64_t>(a.size() + b.size() - 2 * common);
}

// --- edge list -------------------------------------------------------------

std::shared_ptr<EdgeListGraph> EdgeListGraph::parse(std::istream& edges, std::istream* measures,
                                                    std::string source) {
  std::shared_ptr<EdgeListGraph> g(new EdgeListGraph());
  g->descriptor_ = FamilyDescriptor::edge_list(std::move(source));
  std::map<std::pair<VertexId, VertexId>, std::pair<double, std::size_t>> seen;
  std::set<VertexId> vertices;

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(edges, line)) {
    ++lineno;
    if (is_skippable(line)) continue;
    const auto tok = split_ws(line);
    if (tok.size() != 3) throw FormatError("expected 'X Y W', got '" + line + "'", lineno);
    if (tok[0] == tok[1]) throw FormatError("loop at vertex '" + tok[0] + "' is not allowed", lineno);
    const double w = parse_positive(tok[2], "edge weight", lineno);
    auto x = VertexId::token(tok[0]);
    auto y = VertexId::token(tok[1]);
    auto key = x < y ? std::make_pair(x, y) : std::make_pair(y, x);
    if (auto it = seen.find(key); it != seen.end()) {
      if (it->second.first != w)
        throw FormatError("asymmetric edge " + tok[0] + " " + tok[1] + ": weight " + tok[2] +
                              " differs from " + format_double(it->second.first) + " on line " +
                              std::to_string(it->second.second),
                          lineno);
      throw FormatError("edge " + tok[0] + " " + tok[1] + " listed twice (first on line " +
                            std::to_string(it->second.second) + ")",
                        lineno);
    }
    seen.emplace(key, std::make_pair(w, lineno));
    g->adjacency_[x].push_back({y, w});
    g->adjacency_[y].push_back({x, w});
    vertices.insert(x);
    vertices.insert(y);
  }

  if (measures) {
    lineno = 0;
    while (std::getline(*measures, line)) {
      ++lineno;
      if (is_skippable(line)) continue;
      const auto tok = split_ws(line);
      if (tok.size() != 2) throw FormatError("expected 'X M', got '" + line + "'", lineno);
      auto x = VertexId::token(tok[0]);
      if (g->measure_.count(x)) throw FormatError("measure of '" + tok[0] + "' given twice", lineno);
      g->measure_[x] = parse_positive(tok[1], "measure", lineno);
      vertices.insert(x);
    }
  }
  g->order_.assign(vertices.begin(), vertices.end());
  for (auto& [v, ns] : g->adjacency_) sort_neighbors(ns);
  return g;
}

std::shared_ptr<EdgeListGraph> EdgeListGraph::load(const std::string& edge_file,
                                                   const std::string& measure_file) {
  std::ifstream edges(edge_file);
  if (!edges) throw Error("cannot open edge list '" + edge_file + "'");
  std::shared_ptr<EdgeListGraph> g;
  if (measure_file.empty()) {
    g = parse(edges, nullptr, edge_file);
  } else {
    std::ifstream measures(measure_file);
    if (!measures) throw Error("cannot open measure file '" + measure_file + "'");
    g = parse(edges, &measures, edge_file);
  }
  g->descriptor_ = FamilyDescriptor::edge_list(edge_file, measure_file);
  return g;
}

std::vector<Neighbor> EdgeListGraph::neighbors(const VertexId& x) const {
  if (!contains(x)) throw DomainError("vertex '" + x.to_string() + "' is not in the edge list");
  auto it = adjacency_.find(x);
  return it == adjacency_.end() ? std::vector<Neighbor>{} : it->second;
}

double EdgeListGraph::measure(const VertexId& x) const {
  if (!contains(x)) throw DomainError("vertex '" + x.to_string() + "' is not in the edge list");
  auto it = measure_.find(x);
  return it == measure_.end() ? 1.0 : it->second;
}

bool EdgeListGraph::contains(const VertexId& x) const {
  return adjacency_.count(x) || measure_.count(x);
}

VertexId EdgeListGraph::base_vertex() const {
  if (order_.empty()) throw Error("edge list graph is empty");
  return order_.front();
}

std::vector<VertexId> EdgeListGraph::all_vertices() const { return order_; }

// --- function graph --------------------------------------------------------

FunctionGraph::FunctionGraph(NeighborOracle neighbors, MeasureOracle measure, VertexId base,
                             VertexId::Shape shape)
    : neighbors_(std::move(neighbors)),
      measure_(std::move(measure)),
      base_(std::move(base)),
      shape_(shape) {}

std::vector<Neighbor> FunctionGraph::neighbors(const VertexId& x) const {
  auto ns = neighbors_(x);
  sort_neighbors(ns);
  return ns;
}

FamilyDescriptor FunctionGraph::descriptor() const {
  FamilyDescriptor d;
  d.kind = FamilyDescriptor::Kind::Custom;
  return d;
}

GraphPtr make_family(const FamilyDescriptor& descriptor) {
  switch (descriptor.kind) {
    case FamilyDescriptor::Kind::Lattice: return std::make_shared<LatticeGraph>(descriptor.dimension);
    case FamilyDescriptor::Kind::RegularTree:
      return std::make_shared<RegularTreeGraph>(descriptor.branching);
    case FamilyDescriptor::Kind::EdgeList:
      return EdgeListGraph::load(descriptor.edge_file, descriptor.measure_file);
    case FamilyDescriptor::Kind::Custom: break;
  }
  throw ParameterError("custom graphs are built from oracles, not descriptors");
}

Degree degree(const Graph& g, const VertexId& x) {
  Degree d;
  for (const auto& n : g.neighbors(x)) d.deg += n.weight;
  d.Deg = d.deg / g.measure(x);
  return d;
}

// --- regions ---------------------------------------------------------------

GraphRegion GraphRegion::from_parts(std::vector<VertexId> vertices,
                                    std::vector<std::vector<Arc>> internal,
                                    std::vector<std::vector<HaloArc>> halo,
                                    std::vector<double> measure) {
  GraphRegion r;
  r.vertices_ = std::move(vertices);
  r.internal_ = std::move(internal);
  r.halo_ = std::move(halo);
  r.measure_ = std::move(measure);
  r.internal_.resize(r.vertices_.size());
  r.halo_.resize(r.vertices_.size());
  r.measure_.resize(r.vertices_.size(), 1.0);
  for (std::size_t i = 0; i < r.vertices_.size(); ++i) r.index_.emplace(r.vertices_[i], i);
  return r;
}

std::optional<std::size_t> GraphRegion::index_of(const VertexId& x) const {
  auto it = index_.find(x);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<Neighbor> GraphRegion::full_neighbors(std::size_t i) const {
  std::vector<Neighbor> out;
  out.reserve(internal_[i].size() + halo_[i].size());
  for (const auto& a : internal_[i]) out.push_back({vertices_[a.target], a.weight});
  for (const auto& h : halo_[i]) out.push_back({h.target, h.weight});
  return out;
}

std::size_t GraphRegion::internal_edge_count() const {
  std::set<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < size(); ++i)
    for (const auto& a : internal_[i])
      if (a.weight > 0.0) pairs.emplace(std::min(i, a.target), std::max(i, a.target));
  return pairs.size();
}

std::size_t GraphRegion::halo_edge_count() const {
  std::size_t n = 0;
  for (const auto& h : halo_)
    for (const auto& a : h)
      if (a.weight > 0.0) ++n;
  return n;
}

GraphRegion materialize(const Graph& g, std::span<const VertexId> vertices) {
  std::vector<VertexId> sorted(vertices.begin(), vertices.end());
  std::sort(sorted.begin(), sorted.end());
  if (auto dup = std::adjacent_find(sorted.begin(), sorted.end()); dup != sorted.end())
    throw PreconditionError("duplicate vertex " + dup->to_string() + " in region");

  std::vector<std::vector<GraphRegion::Arc>> internal(sorted.size());
  std::vector<std::vector<GraphRegion::HaloArc>> halo(sorted.size());
  std::vector<double> measure(sorted.size());
  std::unordered_map<VertexId, std::size_t, VertexHash> index;
  index.reserve(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) index.emplace(sorted[i], i);

  for (std::size_t i = 0; i < sorted.size(); ++i) {
    measure[i] = g.measure(sorted[i]);
    for (auto& n : g.neighbors(sorted[i])) {
      if (auto it = index.find(n.vertex); it != index.end())
        internal[i].push_back({it->second, n.weight});
      else
        halo[i].push_back({std::move(n.vertex), n.weight});
    }
  }
  return GraphRegion::from_parts(std::move(sorted), std::move(internal), std::move(halo),
                                 std::move(measure));
}

std::vector<VertexId> neighborhood(const Graph& g, std::span<const VertexId> vertices, int steps) {
  std::set<VertexId> out(vertices.begin(), vertices.end());
  std::vector<VertexId> frontier(out.begin(), out.end());
  for (int s = 0; s < steps; ++s) {
    std::vector<VertexId> next;
    for (const auto& x : frontier)
      for (auto& n : g.neighbors(x))
        if (out.insert(n.vertex).second) next.push_back(std::move(n.vertex));
    frontier = std::move(next);
  }
  return {out.begin(), out.end()};
}

VerificationReport validate_region(const GraphRegion& region, const RegionValidation& opts) {
  VerificationReport report("region_validation");
  report.set_param("n_vertices", static_cast<double>(region.size()));

  auto reverse_weight = [&](std::size_t from, std::size_t to) -> std::optional<double> {
    for (const auto& a : region.internal(from))
      if (a.target == to) return a.weight;
    return std::nullopt;
  };

  for (std::size_t i = 0; i < region.size(); ++i) {
    const auto& x = region.vertex(i);
    const double mu = region.measure(i);
    if (!(mu > 0.0) || !std::isfinite(mu))
      report.violation(x.to_string(), "measure must be positive and finite, got " + format_double(mu));
    else
      report.add(x.to_string(), 0.0, 0.0);

    double deg = 0.0;
    for (const auto& a : region.internal(i)) {
      const auto& y = region.vertex(a.target);
      const std::string edge = x.to_string() + "~" + y.to_string();
      if (a.target == i) report.violation(edge, "loop");
      if (!(a.weight >= 0.0) || !std::isfinite(a.weight))
        report.violation(edge, "weight must be nonnegative and finite, got " + format_double(a.weight));
      if (i < a.target || !reverse_weight(a.target, i)) {
        const double back = reverse_weight(a.target, i).value_or(0.0);
        if (back != a.weight)
          report.violation(edge, "asymmetric weight " + format_double(a.weight) + " vs " +
                                     format_double(back));
      }
      deg += a.weight;
    }
    for (const auto& h : region.halo(i)) {
      const std::string edge = x.to_string() + "~" + h.target.to_string();
      if (h.target == x) report.violation(edge, "loop");
      if (!(h.weight >= 0.0) || !std::isfinite(h.weight))
        report.violation(edge, "weight must be nonnegative and finite, got " + format_double(h.weight));
      deg += h.weight;
    }
    if (!std::isfinite(deg)) report.violation(x.to_string(), "weighted degree is not finite");
  }

  if (opts.require_connected && !region.empty()) {
    const std::size_t seed = opts.seed ? region.index_of(*opts.seed).value_or(0) : 0;
    std::vector<bool> seen(region.size(), false);
    std::deque<std::size_t> queue{seed};
    seen[seed] = true;
    while (!queue.empty()) {
      const auto i = queue.front();
      queue.pop_front();
      for (const auto& a : region.internal(i))
        if (a.weight > 0.0 && !seen[a.target]) {
          seen[a.target] = true;
          queue.push_back(a.target);
        }
    }
    for (std::size_t i = 0; i < region.size(); ++i)
      if (!seen[i]) report.violation(region.vertex(i).to_string(), "not reachable from the seed vertex");
  }
  return report;
}

}  // namespace lpuniq
