#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lpuniq/function.hpp"
#include "lpuniq/graph.hpp"
#include "lpuniq/report.hpp"

namespace lpuniq {

/// Positive potential V with a certified lower bound c0 = inf V > 0.
///
/// Evaluation throws PotentialError when V(x) < c0 or V(x) is not finite, so a
/// wrong declaration cannot pass silently.
class Potential {
 public:
  using Oracle = std::function<double(const VertexId&)>;

  static Potential constant(double c0);
  /// Oracle with a declared infimum.
  static Potential declared(Oracle v, double c0, std::string name = "V");
  /// c0 + amplitude * h(x), with h in [0, 1) a deterministic hash of (x, seed).
  static Potential perturbed(double c0, double amplitude, std::uint64_t seed);
  /// Infimum taken as the minimum over the given vertices; flagged region-local.
  static Potential region_local(Oracle v, std::span<const VertexId> vertices, std::string name = "V");
  /// "X value" file; defined on the listed vertices only, region-local infimum.
  static Potential from_file(const std::string& path, VertexId::Shape shape);

  double operator()(const VertexId& x) const;
  double c0() const noexcept { return c0_; }
  bool is_region_local() const noexcept { return region_local_; }
  const std::string& name() const noexcept { return name_; }

 private:
  Potential(Oracle v, double c0, bool region_local, std::string name);
  Oracle oracle_;
  double c0_;
  bool region_local_;
  std::string name_;
};

/// Per-vertex audit V(x) >= c0 > 0 over a vertex set (margin V(x) - c0).
VerificationReport certify_potential(const Potential& V, std::span<const VertexId> vertices);

/// Lu(x) - V(x) u(x).
double apply_operator(const Graph& g, const Potential& V, const GraphFunction& u, const VertexId& x);

struct CharacteristicRoots {
  double plus = 1.0;   ///< > 1
  double minus = 1.0;  ///< 1 / plus
};

/// Roots of t^2 - (2 + c0) t + 1 = 0, the growth factors of solutions of
/// Lu = c0 u on Z.
CharacteristicRoots lattice_characteristic_roots(double c0);

/// U(n) = l^|n| + l^-|n| with l the larger root; solves Lu = c0 u on all of Z.
GraphFunction make_symmetric_growing_solution(double c0);

/// Equation Lu = Vu on the interior of a finite region with prescribed
/// values on the rest. Interior vertices are those with no neighbor outside.
class DirichletProblem {
 public:
  DirichletProblem(const Graph& g, std::span<const VertexId> vertices, GraphFunction boundary_data,
                   Potential potential);

  const GraphRegion& region() const noexcept { return region_; }
  const std::vector<std::size_t>& interior() const noexcept { return interior_; }
  const std::vector<std::size_t>& boundary() const noexcept { return boundary_; }
  const GraphFunction& boundary_data() const noexcept { return boundary_data_; }
  const Potential& potential() const noexcept { return potential_; }

 private:
  GraphRegion region_;
  std::vector<std::size_t> interior_;
  std::vector<std::size_t> boundary_;
  GraphFunction boundary_data_;
  Potential potential_;
};

struct SolveStats {
  std::size_t unknowns = 0;
  bool direct = true;
  std::size_t iterations = 0;
  double max_residual = 0.0;  ///< max over interior of |sum w (u(y)-u(x)) - V mu u(x)|
};

/// Solution defined on the region (evaluation elsewhere throws DomainError).
/// Sparse LDLT up to 2e4 unknowns, conjugate gradients beyond. Throws
/// SolverError when the residual exceeds 1e-10 (1 + max|u|).
GraphFunction dirichlet_solve(const DirichletProblem& problem, SolveStats* stats = nullptr);

/// Per-vertex |Lu - Vu|; the tolerance at x is tol times the magnitude of the
/// terms entering Lu(x) and V(x)u(x), plus tol.
VerificationReport residual_report(const Graph& g, const Potential& V, const GraphFunction& u,
                                   std::span<const VertexId> vertices, double tol = 1e-10);

}  // namespace lpuniq
