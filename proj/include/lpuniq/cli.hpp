#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lpuniq/graph.hpp"
#include "lpuniq/metric.hpp"
#include "lpuniq/numerics.hpp"
#include "lpuniq/report.hpp"
#include "lpuniq/schrodinger.hpp"

namespace lpuniq {

/// Experiment description read from JSON:
///   {family, metric:{kind, scale, jump, c0_bound, intrinsic_bound},
///    potential:{kind, c0, amplitude, file}, p, beta, alpha, delta, R,
///    radii:[...], checks:[...], tol:{identity, inequality}, out_dir, seed,
///    boundary, xi_orientation}
/// Unknown keys and out-of-range values are rejected with ParameterError.
struct ExperimentConfig {
  FamilyDescriptor family = FamilyDescriptor::lattice(1);
  std::string metric_kind = "default";  ///< default | combinatorial | scaled | edge_length
  std::optional<double> metric_scale;
  std::optional<double> declared_jump;
  std::optional<double> declared_c0_bound;
  std::optional<double> declared_intrinsic_bound;

  std::string potential_kind = "constant";  ///< constant | perturbed | file
  double c0 = 1.0;
  double amplitude = 0.0;
  std::string potential_file;

  double p = 2.0;
  std::optional<double> beta, alpha, delta, R;
  std::vector<double> radii;
  std::vector<std::string> checks;
  Tolerance tol;
  std::string out_dir;
  std::uint64_t seed = 1;
  double boundary = 1.0;
  bool xi_increasing = false;

  static ExperimentConfig from_json(const std::string& text);
  static ExperimentConfig load(const std::string& path);
};

/// Built graph, metric and potential of a configuration.
struct Experiment {
  GraphPtr graph;
  PseudoMetric metric;
  Potential potential;
};

/// Throws PotentialError when the potential cannot be certified.
Experiment build_experiment(const ExperimentConfig& cfg);

/// Canonical check name for a name or alias ("ibp" -> "integration_by_parts");
/// throws ParameterError for unknown names.
std::string canonical_check(const std::string& name);
const std::vector<std::string>& all_checks();

/// Result of a subcommand: JSON summary, reports produced, exit status
/// (0 all passed, 1 a check failed or was refused, 2 invalid input).
struct CommandResult {
  int exit_code = 0;
  std::string json;
  std::vector<VerificationReport> reports;
};

CommandResult cmd_certify(const ExperimentConfig& cfg);
CommandResult cmd_verify(const ExperimentConfig& cfg);
CommandResult cmd_sharpness(const ExperimentConfig& cfg);
CommandResult cmd_decay(const ExperimentConfig& cfg);
CommandResult cmd_solve(const ExperimentConfig& cfg);

/// Full command line: lpuniq <certify|verify|sharpness|decay|solve> --config FILE [--out-dir DIR] [--quiet]
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lpuniq
