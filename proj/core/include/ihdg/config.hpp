// Flat key=value run configuration.
//
//   # comment
//   problem = allen_cahn
//   mesh = structured:8          (or file:path/to/mesh.txt)
//   k = 1
//   dt = 0.015625
//   T = 1
//
// Optional keys: scheme (backward_euler | crank_nicolson), tau, newton_tol,
// newton_max, linear_solver (sparse | dense), snapshots (comma-separated
// times), output (directory), levels (comma-separated n), dt_rule (h | h2).

#ifndef IHDG_CONFIG_HPP
#define IHDG_CONFIG_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ihdg/analysis.hpp"
#include "ihdg/solver.hpp"

namespace ihdg {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MeshSource {
  /// Structured unit square with n cells per side when n > 0, else a file.
  int structured_n = 0;
  std::string path;

  bool operator==(const MeshSource&) const = default;
};

struct RunConfig {
  std::string problem;
  std::optional<MeshSource> mesh;
  int k = 0;
  TimeScheme scheme = TimeScheme::BackwardEuler;
  std::optional<double> dt;
  double final_time = 0.0;
  double tau = 1.0;
  double newton_tolerance = 1e-10;
  int newton_max_iterations = 25;
  LinearSolverKind linear_solver = LinearSolverKind::SparseDirect;
  std::vector<double> snapshots;
  std::string output = "output";
  std::vector<int> levels;
  std::optional<TimeStepRule> dt_rule;

  bool operator==(const RunConfig&) const = default;

  /// Requires mesh and dt; snapshot times must lie in [0, T].
  void validate_for_run() const;
  /// Requires levels and dt_rule and a problem with an exact solution.
  void validate_for_converge() const;

  [[nodiscard]] SolverConfig solver_config() const;
  [[nodiscard]] ConvergenceOptions convergence_options() const;
};

/// Throws ConfigError naming the offending line or key.
RunConfig parse_config(std::string_view text);
RunConfig load_config_file(const std::string& path);

/// Text that parse_config maps back to an equal RunConfig.
std::string render_config(const RunConfig& config);

}  // namespace ihdg

#endif  // IHDG_CONFIG_HPP
