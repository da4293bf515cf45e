#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "lpuniq/report.hpp"
#include "lpuniq/vertex.hpp"

namespace lpuniq {

struct Neighbor {
  VertexId vertex;
  double weight = 0.0;
};

/// Which concrete family a graph belongs to.
struct FamilyDescriptor {
  enum class Kind { Lattice, RegularTree, EdgeList, Custom };

  Kind kind = Kind::Lattice;
  int dimension = 1;   ///< lattice dimension d
  int branching = 3;   ///< regular tree degree b
  std::string edge_file;
  std::string measure_file;  ///< optional; unlisted vertices get measure 1

  static FamilyDescriptor lattice(int d) { return {Kind::Lattice, d, 0, {}, {}}; }
  static FamilyDescriptor regular_tree(int b) { return {Kind::RegularTree, 0, b, {}, {}}; }
  static FamilyDescriptor edge_list(std::string edges, std::string measures = {}) {
    return {Kind::EdgeList, 0, 0, std::move(edges), std::move(measures)};
  }

  /// "lattice:2", "tree:3", "edge_list:<edges>[,<measures>]".
  static FamilyDescriptor parse(const std::string& text);
  std::string to_string() const;
};

/// Locally finite weighted graph given by pure oracles.
///
/// Implementations never hold mutable state; all calls are safe from
/// concurrent workers and return identical results when repeated.
class Graph {
 public:
  virtual ~Graph() = default;

  /// Neighbors with positive weight, in canonical vertex order.
  virtual std::vector<Neighbor> neighbors(const VertexId& x) const = 0;
  virtual double measure(const VertexId& x) const = 0;
  virtual bool contains(const VertexId& x) const = 0;
  virtual FamilyDescriptor descriptor() const = 0;
  /// A vertex every instance of the family has (lattice origin, tree root, ...).
  virtual VertexId base_vertex() const = 0;
  virtual VertexId::Shape vertex_shape() const = 0;

  /// Closed-form hop count when the family provides one.
  virtual std::optional<std::int64_t> hop_distance(const VertexId&, const VertexId&) const {
    return std::nullopt;
  }
  /// True when automorphisms act transitively, so one vertex determines every
  /// per-vertex supremum.
  virtual bool vertex_transitive() const { return false; }
  virtual bool finite() const { return false; }
  /// All vertices, for finite graphs only.
  virtual std::vector<VertexId> all_vertices() const { return {}; }

  double weight(const VertexId& x, const VertexId& y) const;
};

using GraphPtr = std::shared_ptr<const Graph>;

/// Z^d with unit weights and unit measure.
class LatticeGraph final : public Graph {
 public:
  explicit LatticeGraph(int dimension);
  std::vector<Neighbor> neighbors(const VertexId& x) const override;
  double measure(const VertexId& x) const override;
  bool contains(const VertexId& x) const override;
  FamilyDescriptor descriptor() const override { return FamilyDescriptor::lattice(dim_); }
  VertexId base_vertex() const override;
  VertexId::Shape vertex_shape() const override { return VertexId::Shape::Lattice; }
  std::optional<std::int64_t> hop_distance(const VertexId& x, const VertexId& y) const override;
  bool vertex_transitive() const override { return true; }
  int dimension() const noexcept { return dim_; }

 private:
  int dim_;
};

/// The b-regular tree: the root has b children, every other vertex has b - 1
/// children and one parent. Unit weights and unit measure.
class RegularTreeGraph final : public Graph {
 public:
  explicit RegularTreeGraph(int branching);
  std::vector<Neighbor> neighbors(const VertexId& x) const override;
  double measure(const VertexId& x) const override;
  bool contains(const VertexId& x) const override;
  FamilyDescriptor descriptor() const override { return FamilyDescriptor::regular_tree(b_); }
  VertexId base_vertex() const override { return VertexId::root(); }
  VertexId::Shape vertex_shape() const override { return VertexId::Shape::Word; }
  std::optional<std::int64_t> hop_distance(const VertexId& x, const VertexId& y) const override;
  bool vertex_transitive() const override { return true; }
  int branching() const noexcept { return b_; }

 private:
  int b_;
};

/// Finite graph read from an edge list, with optional measure file.
class EdgeListGraph final : public Graph {
 public:
  /// Parses the edge and measure streams; throws FormatError naming the line.
  static std::shared_ptr<EdgeListGraph> parse(std::istream& edges, std::istream* measures,
                                              std::string source = "<stream>");
  static std::shared_ptr<EdgeListGraph> load(const std::string& edge_file,
                                             const std::string& measure_file = {});

  std::vector<Neighbor> neighbors(const VertexId& x) const override;
  double measure(const VertexId& x) const override;
  bool contains(const VertexId& x) const override;
  FamilyDescriptor descriptor() const override { return descriptor_; }
  VertexId base_vertex() const override;
  VertexId::Shape vertex_shape() const override { return VertexId::Shape::Token; }
  bool finite() const override { return true; }
  std::vector<VertexId> all_vertices() const override;

 private:
  EdgeListGraph() = default;
  FamilyDescriptor descriptor_;
  std::unordered_map<VertexId, std::vector<Neighbor>, VertexHash> adjacency_;
  std::unordered_map<VertexId, double, VertexHash> measure_;
  std::vector<VertexId> order_;
};

/// Graph from user-supplied oracles. No invariant is enforced here; use
/// validate_region to audit a materialized piece.
class FunctionGraph final : public Graph {
 public:
  using NeighborOracle = std::function<std::vector<Neighbor>(const VertexId&)>;
  using MeasureOracle = std::function<double(const VertexId&)>;

  FunctionGraph(NeighborOracle neighbors, MeasureOracle measure, VertexId base,
                VertexId::Shape shape);
  std::vector<Neighbor> neighbors(const VertexId& x) const override;
  double measure(const VertexId& x) const override { return measure_(x); }
  bool contains(const VertexId&) const override { return true; }
  FamilyDescriptor descriptor() const override;
  VertexId base_vertex() const override { return base_; }
  VertexId::Shape vertex_shape() const override { return shape_; }

 private:
  NeighborOracle neighbors_;
  MeasureOracle measure_;
  VertexId base_;
  VertexId::Shape shape_;
};

GraphPtr make_family(const FamilyDescriptor& descriptor);

struct Degree {
  double deg = 0.0;  ///< sum of incident weights
  double Deg = 0.0;  ///< deg / measure
};

Degree degree(const Graph& g, const VertexId& x);

/// Finite piece of a graph: vertex set in canonical order, internal arcs
/// (both endpoints inside), halo arcs (leaving the set) and measures.
/// Immutable after construction.
class GraphRegion {
 public:
  struct Arc {
    std::size_t target;
    double weight;
  };
  struct HaloArc {
    VertexId target;
    double weight;
  };

  GraphRegion() = default;

  /// Unchecked assembly from raw parts (used to audit injected data).
  /// vertices must be sorted and unique.
  static GraphRegion from_parts(std::vector<VertexId> vertices,
                                std::vector<std::vector<Arc>> internal,
                                std::vector<std::vector<HaloArc>> halo,
                                std::vector<double> measure);

  std::size_t size() const noexcept { return vertices_.size(); }
  bool empty() const noexcept { return vertices_.empty(); }
  const std::vector<VertexId>& vertices() const noexcept { return vertices_; }
  const VertexId& vertex(std::size_t i) const { return vertices_[i]; }
  std::optional<std::size_t> index_of(const VertexId& x) const;
  bool contains(const VertexId& x) const { return index_.count(x) != 0; }

  std::span<const Arc> internal(std::size_t i) const { return internal_[i]; }
  std::span<const HaloArc> halo(std::size_t i) const { return halo_[i]; }
  double measure(std::size_t i) const { return measure_[i]; }

  /// Every neighbor of vertex i (internal first, then halo) with its weight.
  std::vector<Neighbor> full_neighbors(std::size_t i) const;

  /// Unordered adjacent pairs inside the set.
  std::size_t internal_edge_count() const;
  std::size_t halo_edge_count() const;

 private:
  std::vector<VertexId> vertices_;
  std::unordered_map<VertexId, std::size_t, VertexHash> index_;
  std::vector<std::vector<Arc>> internal_;
  std::vector<std::vector<HaloArc>> halo_;
  std::vector<double> measure_;
};

/// Materializes the given finite vertex set; throws PreconditionError on duplicates.
GraphRegion materialize(const Graph& g, std::span<const VertexId> vertices);

/// Vertices within n graph steps of the set (the set included), canonical order.
std::vector<VertexId> neighborhood(const Graph& g, std::span<const VertexId> vertices,
                                   int steps);

struct RegionValidation {
  bool require_connected = false;
  std::optional<VertexId> seed;  ///< defaults to the first vertex
};

/// Audits loops, symmetry, weight sign, measure positivity and (optionally)
/// connectivity. Violations are report content.
VerificationReport validate_region(const GraphRegion& region, const RegionValidation& opts = {});

}  // namespace lpuniq
