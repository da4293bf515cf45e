#include "lpuniq/schrodinger.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>

#include "lpuniq/calculus.hpp"
#include "lpuniq/errors.hpp"
#include "lpuniq/numerics.hpp"

namespace lpuniq {

namespace {

std::uint64_t splitmix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// FNV-1a over the text form, so the value does not depend on the platform hash.
double unit_hash(const VertexId& x, std::uint64_t seed) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : x.to_string()) h = (h ^ c) * 0x100000001b3ULL;
  return static_cast<double>(splitmix(h ^ splitmix(seed)) >> 11) * 0x1.0p-53;
}

}  // namespace

Potential::Potential(Oracle v, double c0, bool region_local, std::string name)
    : oracle_(std::move(v)), c0_(c0), region_local_(region_local), name_(std::move(name)) {
  if (!(c0_ > 0.0) || !std::isfinite(c0_))
    throw PotentialError("potential '" + name_ + "' has infimum " + format_double(c0_) +
                         "; inf V > 0 is required");
}

Potential Potential::constant(double c0) {
  return Potential([c0](const VertexId&) { return c0; }, c0, false, "const(" + format_double(c0) + ")");
}

Potential Potential::declared(Oracle v, double c0, std::string name) {
  return Potential(std::move(v), c0, false, std::move(name));
}

Potential Potential::perturbed(double c0, double amplitude, std::uint64_t seed) {
  if (!(amplitude >= 0.0)) throw ParameterError("perturbation amplitude must be nonnegative");
  return Potential(
      [c0, amplitude, seed](const VertexId& x) { return c0 + amplitude * unit_hash(x, seed); }, c0,
      false, "perturbed(" + format_double(c0) + "," + format_double(amplitude) + ")");
}

Potential Potential::region_local(Oracle v, std::span<const VertexId> vertices, std::string name) {
  if (vertices.empty()) throw PotentialError("region-local potential needs at least one vertex");
  double lo = std::numeric_limits<double>::infinity();
  for (const auto& x : vertices) {
    const double vx = v(x);
    if (!std::isfinite(vx))
      throw PotentialError("potential '" + name + "' is not finite at " + x.to_string());
    lo = std::min(lo, vx);
  }
  return Potential(std::move(v), lo, true, std::move(name));
}

Potential Potential::from_file(const std::string& path, VertexId::Shape shape) {
  const GraphFunction table = load_function(path, shape);
  std::vector<VertexId> listed(table.support().begin(), table.support().end());
  std::vector<std::pair<VertexId, double>> values;
  for (const auto& x : listed) values.emplace_back(x, table(x));
  const GraphFunction domain = GraphFunction::on_domain(std::move(values), Provenance::File, path);
  return region_local([domain](const VertexId& x) { return domain(x); }, listed, path);
}

double Potential::operator()(const VertexId& x) const {
  const double v = oracle_(x);
  if (!(v >= c0_) || !std::isfinite(v))
    throw PotentialError("potential '" + name_ + "' is " + format_double(v) + " at " + x.to_string() +
                         ", below its infimum " + format_double(c0_));
  return v;
}

VerificationReport certify_potential(const Potential& V, std::span<const VertexId> vertices) {
  VerificationReport r("potential");
  r.set_param("c0", V.c0());
  r.set_label("potential", V.name());
  r.set_label("infimum", V.is_region_local() ? "region_local" : "declared");
  for (const auto& x : vertices) {
    try {
      r.add(x.to_string(), V(x) - V.c0(), 0.0);
    } catch (const PotentialError& e) {
      r.violation(x.to_string(), e.what());
    }
  }
  return r;
}

double apply_operator(const Graph& g, const Potential& V, const GraphFunction& u, const VertexId& x) {
  return laplacian(g, u, x) - V(x) * u(x);
}

CharacteristicRoots lattice_characteristic_roots(double c0) {
  if (!(c0 > 0.0)) throw ParameterError("c0 must be positive");
  // sqrt((2+c0)^2 - 4) written without cancellation
  const double plus = ((2.0 + c0) + std::sqrt(c0 * (4.0 + c0))) / 2.0;
  return {plus, 1.0 / plus};
}

GraphFunction make_symmetric_growing_solution(double c0) {
  const double lambda = lattice_characteristic_roots(c0).plus;
  const double log_lambda = std::log(lambda);
  return GraphFunction::closed_form(
      [log_lambda](const VertexId& x) {
        if (x.shape() != VertexId::Shape::Lattice || x.coords().size() != 1)
          throw DomainError("growing solution lives on Z, got " + x.to_string());
        const auto& c = x.coords();
        const double a = log_lambda * static_cast<double>(c[0] < 0 ? -c[0] : c[0]);
        return std::exp(a) + std::exp(-a);
      },
      "U_" + format_double(c0));
}

DirichletProblem::DirichletProblem(const Graph& g, std::span<const VertexId> vertices,
                                   GraphFunction boundary_data, Potential potential)
    : region_(materialize(g, vertices)),
      boundary_data_(std::move(boundary_data)),
      potential_(std::move(potential)) {
  for (std::size_t i = 0; i < region_.size(); ++i)
    (region_.halo(i).empty() ? interior_ : boundary_).push_back(i);
}

GraphFunction dirichlet_solve(const DirichletProblem& problem, SolveStats* stats) {
  const GraphRegion& region = problem.region();
  const auto& interior = problem.interior();
  if (interior.empty()) throw PreconditionError("Dirichlet problem has an empty interior");

  const std::size_t n = region.size();
  std::vector<double> value(n, 0.0);
  std::vector<long> slot(n, -1);
  for (std::size_t k = 0; k < interior.size(); ++k) slot[interior[k]] = static_cast<long>(k);
  for (std::size_t i : problem.boundary()) value[i] = problem.boundary_data()(region.vertex(i));

  std::vector<double> vmu(n, 0.0);
  for (std::size_t i : interior) vmu[i] = problem.potential()(region.vertex(i)) * region.measure(i);

  // (V mu + deg) u(x) - sum_{y interior} w u(y) = sum_{y boundary} w g(y)
  const auto m = static_cast<Eigen::Index>(interior.size());
  std::vector<Eigen::Triplet<double>> triplets;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);
  for (std::size_t k = 0; k < interior.size(); ++k) {
    const std::size_t i = interior[k];
    double diag = vmu[i];
    for (const auto& arc : region.internal(i)) {
      diag += arc.weight;
      if (slot[arc.target] >= 0)
        triplets.emplace_back(static_cast<Eigen::Index>(k), slot[arc.target], -arc.weight);
      else
        rhs[static_cast<Eigen::Index>(k)] += arc.weight * value[arc.target];
    }
    triplets.emplace_back(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k), diag);
  }
  Eigen::SparseMatrix<double> A(m, m);
  A.setFromTriplets(triplets.begin(), triplets.end());

  SolveStats local;
  local.unknowns = interior.size();
  Eigen::VectorXd sol;
  constexpr std::size_t kDirectLimit = 20'000;
  if (interior.size() <= kDirectLimit) {
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(A);
    if (ldlt.info() != Eigen::Success) throw SolverError("sparse factorization failed");
    sol = ldlt.solve(rhs);
    // one refinement step against the assembled matrix
    const Eigen::VectorXd r = rhs - A * sol;
    sol += ldlt.solve(r);
  } else {
    Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper> cg(A);
    cg.setTolerance(1e-12);
    cg.setMaxIterations(static_cast<Eigen::Index>(10 * interior.size() + 1000));
    sol = cg.solve(rhs);
    local.direct = false;
    local.iterations = static_cast<std::size_t>(cg.iterations());
    if (cg.info() != Eigen::Success)
      throw SolverError("conjugate gradients did not converge in " +
                        std::to_string(local.iterations) + " iterations");
  }
  for (std::size_t k = 0; k < interior.size(); ++k) value[interior[k]] = sol[static_cast<Eigen::Index>(k)];

  double umax = 0.0;
  for (double v : value) umax = std::max(umax, std::abs(v));
  for (std::size_t i : interior) {
    double r = -vmu[i] * value[i];
    for (const auto& arc : region.internal(i)) r += arc.weight * (value[arc.target] - value[i]);
    local.max_residual = std::max(local.max_residual, std::abs(r));
  }
  if (!(local.max_residual <= 1e-10 * (1.0 + umax)))
    throw SolverError("Dirichlet residual " + format_double(local.max_residual) +
                      " exceeds 1e-10 (1 + max|u|)");
  if (stats) *stats = local;

  std::vector<std::pair<VertexId, double>> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.emplace_back(region.vertex(i), value[i]);
  return GraphFunction::on_domain(std::move(out), Provenance::SolverOutput, "u");
}

VerificationReport residual_report(const Graph& g, const Potential& V, const GraphFunction& u,
                                   std::span<const VertexId> vertices, double tol) {
  VerificationReport r("residual");
  r.set_param("tol", tol);
  double worst = 0.0;
  for (const auto& x : vertices) {
    const double ux = u(x);
    const double mu = g.measure(x);
    double flow = 0.0, scale = 0.0;
    for (const auto& n : g.neighbors(x)) {
      const double uy = u(n.vertex);
      flow += (uy - ux) * n.weight;
      scale += (std::abs(uy) + std::abs(ux)) * n.weight;
    }
    const double vx = V(x);
    const double res = std::abs(flow / mu - vx * ux);
    scale = scale / mu + vx * std::abs(ux);
    worst = std::max(worst, res);
    r.add(x.to_string(), -res, tol * (1.0 + scale));
  }
  r.set_quantity("max_residual", worst);
  return r;
}

}  // namespace lpuniq
