// Problem definitions for u_t - D Lap(u) + F(u) = f with homogeneous
// Dirichlet or Neumann data, for one field or a coupled pair of fields.

#ifndef IHDG_PROBLEMS_HPP
#define IHDG_PROBLEMS_HPP

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "ihdg/dof_layout.hpp"
#include "ihdg/projections.hpp"

namespace ihdg {

using TimeScalarField = std::function<double(double t, const Point& x)>;
using TimeVectorField = std::function<Eigen::Vector2d(double t, const Point& x)>;

/// Pointwise reaction term. `value` writes F_c(u_1, ..., u_m) for every
/// field c; `jacobian` writes dF_c/du_d at index c * m + d.
struct Reaction {
  std::function<void(std::span<const double> u, std::span<double> F)> value;
  std::function<void(std::span<const double> u, std::span<double> dF)> jacobian;
};

/// Builds a one-field Reaction from scalar maps.
Reaction scalar_reaction(std::function<double(double)> F, std::function<double(double)> dF);

enum class InitialProjection {
  Hdg,  ///< HDG projection of (q0, u0); needs the exact flux at t = 0
  L2,   ///< elementwise L2 projection onto P^k
};

struct ExactSolution {
  std::vector<TimeScalarField> u;
  /// q = -D grad u.
  std::vector<TimeVectorField> q;
};

struct ProblemSpec {
  std::string name;
  std::vector<std::string> field_names;
  std::vector<double> diffusion;
  BoundaryCondition bc = BoundaryCondition::Dirichlet;
  Reaction reaction;
  /// Empty means f = 0 for every field.
  std::vector<TimeScalarField> source;
  std::vector<ScalarField> initial;
  InitialProjection initial_projection = InitialProjection::L2;
  std::optional<ExactSolution> exact;

  [[nodiscard]] int num_fields() const { return static_cast<int>(diffusion.size()); }
};

/// u_t - Lap(u) + u^3 - u = f on the unit square, homogeneous Dirichlet,
/// exact solution sin(t) sin(pi x) sin(pi y).
ProblemSpec allen_cahn();

/// Linear heat equation with the same exact solution as allen_cahn().
ProblemSpec manufactured_heat();

struct SchnakenbergParameters {
  double kappa = 100.0;
  double a = 0.1305;
  double b = 0.7695;
  double d1 = 0.05;
  double d2 = 1.0;
};

/// Activator/inhibitor pair (C_a, C_i) with zero-flux boundaries. With
/// `perturbed` the activator starts from a+b plus a small Gaussian bump
/// centred at (1/3, 1/2); otherwise both fields start at the homogeneous
/// equilibrium (a+b, b/(a+b)^2).
ProblemSpec schnakenberg(bool perturbed = true, const SchnakenbergParameters& params = {});

/// Names accepted by make_problem.
std::vector<std::string> problem_names();

/// Throws std::invalid_argument for an unknown name.
ProblemSpec make_problem(const std::string& name);

}  // namespace ihdg

#endif  // IHDG_PROBLEMS_HPP
