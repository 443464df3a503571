// L2 errors against exact solutions and the convergence-study harness.

#ifndef IHDG_ANALYSIS_HPP
#define IHDG_ANALYSIS_HPP

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "ihdg/discretization.hpp"
#include "ihdg/problems.hpp"
#include "ihdg/projections.hpp"
#include "ihdg/solver.hpp"

namespace ihdg {

enum class ScalarSpace { W, Z };

/// ||exact - u_h|| over the mesh for a W_h or Z_h coefficient vector (one
/// field), using a rule of exactness 2(k+1)+4 and element-order summation.
double l2_error(const Discretization& disc, ScalarSpace space, const Eigen::VectorXd& coeffs,
                const ScalarField& exact);

/// ||exact - q_h|| for a V_h coefficient vector (one field).
double l2_error_flux(const Discretization& disc, const Eigen::VectorXd& coeffs, const VectorField& exact);

struct ConvergenceRow {
  int n = 0;  ///< cells per side; the level parameter is 1/n
  double dt = 0.0;
  double err_q = 0.0;
  double err_u = 0.0;
  double err_ustar = 0.0;
  /// NaN on the first row and whenever an error is too small to rate.
  double rate_q = 0.0;
  double rate_u = 0.0;
  double rate_ustar = 0.0;
};

struct ConvergenceTable {
  int k = 0;
  std::vector<ConvergenceRow> rows;
};

/// log(err_coarse / err_fine) / log(n_fine / n_coarse), i.e. log2 of the
/// error ratio for halved meshes; NaN if either error is below 1e-12.
double convergence_rate(double err_coarse, double err_fine, int n_coarse, int n_fine);

enum class TimeStepRule {
  Linear,     ///< dt = 1/n
  Quadratic,  ///< dt = 1/n^2
};

struct ConvergenceOptions {
  int k = 1;
  std::vector<int> levels{2, 4, 8, 16, 32};
  TimeScheme scheme = TimeScheme::CrankNicolson;
  TimeStepRule dt_rule = TimeStepRule::Quadratic;
  double final_time = 1.0;
  double tau = 1.0;
  double newton_tolerance = 1e-10;
  int newton_max_iterations = 25;
  LinearSolverKind linear_solver = LinearSolverKind::SparseDirect;
};

/// One structured-square run per level; errors of field 0 at final_time.
/// Throws if the problem has no exact solution.
ConvergenceTable run_convergence(const ProblemSpec& problem, const ConvergenceOptions& options,
                                 const std::function<void(const ConvergenceRow&)>& on_row = {});

/// Aligned text: errors as %.4E, rates as %.2f, first-row rates blank.
void write_table_text(const ConvergenceTable& table, std::ostream& out);
/// CSV with header level,err_q,rate_q,err_u,rate_u,err_ustar,rate_ustar.
void write_table_csv(const ConvergenceTable& table, std::ostream& out);

}  // namespace ihdg

#endif  // IHDG_ANALYSIS_HPP
