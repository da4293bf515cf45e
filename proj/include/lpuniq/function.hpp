#pragma once

#include <functional>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lpuniq/vertex.hpp"

namespace lpuniq {

enum class Provenance { ClosedForm, SolverOutput, File };

/// Real-valued vertex function.
///
/// Three support shapes: total (closed form defined everywhere), finite
/// support (exactly zero outside an explicit vertex list), and a declared
/// domain (evaluation outside throws DomainError). Copies share storage.
class GraphFunction {
 public:
  using Oracle = std::function<double(const VertexId&)>;

  GraphFunction() : GraphFunction(constant(0.0)) {}

  static GraphFunction closed_form(Oracle f, std::string name = "f");
  static GraphFunction constant(double c);
  /// Closed form known to vanish outside support.
  static GraphFunction with_support(Oracle f, std::vector<VertexId> support, std::string name = "f");
  /// Explicit values, zero elsewhere.
  static GraphFunction finite(std::vector<std::pair<VertexId, double>> values,
                              Provenance provenance = Provenance::ClosedForm, std::string name = "f");
  /// Explicit values on a domain; evaluation elsewhere throws.
  static GraphFunction on_domain(std::vector<std::pair<VertexId, double>> values,
                                 Provenance provenance, std::string name = "u");
  static GraphFunction indicator(const VertexId& x);

  double operator()(const VertexId& x) const;
  bool evaluable_at(const VertexId& x) const;

  bool has_finite_support() const noexcept { return kind_ == Kind::Finite; }
  bool has_domain() const noexcept { return kind_ == Kind::Domain; }
  /// Support (finite kind) or domain (domain kind), canonical order; empty for total functions.
  std::span<const VertexId> support() const noexcept;
  Provenance provenance() const noexcept { return provenance_; }
  const std::string& name() const noexcept { return name_; }

  GraphFunction scaled(double c) const;

  friend GraphFunction operator*(const GraphFunction& f, const GraphFunction& h);
  friend GraphFunction operator+(const GraphFunction& f, const GraphFunction& h);

 private:
  enum class Kind { Total, Finite, Domain };
  using Table = std::unordered_map<VertexId, double, VertexHash>;

  GraphFunction(Kind kind, Oracle oracle, std::shared_ptr<const std::vector<VertexId>> support,
                Provenance provenance, std::string name);

  Kind kind_ = Kind::Total;
  Oracle oracle_;
  std::shared_ptr<const std::vector<VertexId>> support_;
  std::shared_ptr<const std::unordered_map<VertexId, bool, VertexHash>> support_index_;
  Provenance provenance_ = Provenance::ClosedForm;
  std::string name_;
};

/// "X value" per line, '#' comments; unlisted vertices are zero.
GraphFunction read_function(std::istream& in, VertexId::Shape shape);
GraphFunction load_function(const std::string& path, VertexId::Shape shape);
/// Writes every vertex of the support/domain with 17 significant digits.
void write_function(std::ostream& out, const GraphFunction& f, std::span<const VertexId> vertices);

}  // namespace lpuniq
