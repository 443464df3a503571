// Fully discrete time stepping with Newton's method on the interpolatory
// Jacobian and element-local static condensation onto the trace unknowns.
//
// Unknowns are stacked as x = [alpha; beta; zeta], each block holding all
// fields one after another (field c of alpha occupies [c N1, (c+1) N1)).
// For field c with diffusion D the three block rows are
//
//   A3/D alpha - A4 beta + A5 zeta                                  = 0
//   M/dt beta + theta (A4^T alpha + A6 beta - A7 zeta + A9 F(gamma)) = b
//   A5^T alpha + A7^T beta - A8 zeta                                = 0
//
// where gamma = B11 alpha / D + B12 beta, theta = 1 is backward Euler and
// theta = 1/2 applies the trapezoidal rule to the middle row only.

#ifndef IHDG_SOLVER_HPP
#define IHDG_SOLVER_HPP

#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseLU>

#include "ihdg/assembly.hpp"
#include "ihdg/discretization.hpp"
#include "ihdg/problems.hpp"

namespace ihdg {

enum class TimeScheme { BackwardEuler, CrankNicolson };
enum class LinearSolverKind { Dense, SparseDirect };

struct SolverConfig {
  double dt = 0.01;
  double final_time = 1.0;
  TimeScheme scheme = TimeScheme::BackwardEuler;
  /// Newton stops when ||G||_2 <= newton_tolerance * sqrt(#unknowns).
  double newton_tolerance = 1e-10;
  int newton_max_iterations = 25;
  LinearSolverKind linear_solver = LinearSolverKind::SparseDirect;
  /// Stabilization, constant on every element.
  double tau = 1.0;

  /// Throws std::invalid_argument if any field is out of range.
  void validate() const;
};

struct State {
  double t = 0.0;
  Eigen::VectorXd alpha;
  Eigen::VectorXd beta;
  Eigen::VectorXd zeta;
  Eigen::VectorXd gamma;
};

/// Newton failed to reach the tolerance.
class NonConvergenceError : public std::runtime_error {
 public:
  NonConvergenceError(double t, double residual, int iterations)
      : std::runtime_error("Newton did not converge at t=" + std::to_string(t) + " after " +
                           std::to_string(iterations) + " iterations (residual " +
                           std::to_string(residual) + ")"),
        residual_(residual) {}
  [[nodiscard]] double residual() const { return residual_; }

 private:
  double residual_;
};

class SingularSystemError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Element-local view of a Jacobian: with local unknowns a (all fields'
/// alpha_K, beta_K) and the element's trace unknowns z,
///   A a + C z = r_a      (flux and scalar rows of the element)
///   E a + D z            (this element's contribution to the trace rows)
struct LocalJacobian {
  Eigen::MatrixXd A, C, E, D;
  /// Position of each local unknown in the stacked vector.
  std::vector<int> rows;
  /// Position of each local trace unknown in the stacked vector, or -1.
  std::vector<int> trace_rows;
};

struct JacobianBlocks {
  int size = 0;
  int trace_offset = 0;
  std::vector<LocalJacobian> elements;

  /// Monolithic matrix with the same entries.
  [[nodiscard]] SparseMatrix to_sparse() const;
};

/// Reuses the symbolic factorization across solves with the same pattern.
class TraceSystemSolver {
 public:
  explicit TraceSystemSolver(LinearSolverKind kind = LinearSolverKind::SparseDirect) : kind_(kind) {}
  Eigen::VectorXd solve(const SparseMatrix& matrix, const Eigen::VectorXd& rhs);

 private:
  LinearSolverKind kind_;
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu_;
  bool analyzed_ = false;
  Eigen::Index analyzed_nnz_ = -1;
};

/// Solves J x = rhs by eliminating alpha and beta element by element and
/// solving the global system for the traces.
Eigen::VectorXd condensed_solve(const JacobianBlocks& jac, const Eigen::VectorXd& rhs,
                                TraceSystemSolver& trace_solver);
Eigen::VectorXd condensed_solve(const JacobianBlocks& jac, const Eigen::VectorXd& rhs,
                                LinearSolverKind kind = LinearSolverKind::SparseDirect);

/// The condensed trace matrix and right-hand side (exposed for inspection).
struct TraceSystem {
  SparseMatrix matrix;
  Eigen::VectorXd rhs;
};
TraceSystem condensed_trace_system(const JacobianBlocks& jac, const Eigen::VectorXd& rhs);

/// Everything a single time step's nonlinear system depends on besides x.
struct StepContext {
  double t = 0.0;  ///< new time level
  double dt = 0.0;
  double theta = 1.0;
  /// Middle-row right-hand side b, all fields stacked.
  Eigen::VectorXd rhs;
};

struct NewtonLog {
  int iterations = 0;
  double initial_residual = 0.0;
  double final_residual = 0.0;
  std::vector<double> residual_history;
  bool converged = false;
};

struct NewtonResult {
  Eigen::VectorXd x;
  NewtonLog log;
};

struct StepLog {
  int step = 0;
  double t = 0.0;
  NewtonLog newton;
};

/// Formats "step n t residual_initial residual_final newton_iters".
std::string format_step_log(const StepLog& log);

struct RunResult {
  State final_state;
  std::vector<StepLog> steps;
};

class HdgSolver {
 public:
  /// Assembles every matrix and the postprocessing blocks exactly once.
  HdgSolver(std::shared_ptr<const Discretization> disc, ProblemSpec problem, SolverConfig config);

  [[nodiscard]] const Discretization& discretization() const { return *disc_; }
  [[nodiscard]] const ProblemSpec& problem() const { return problem_; }
  [[nodiscard]] const SolverConfig& config() const { return config_; }
  [[nodiscard]] const SystemMatrices& system() const { return sys_; }
  [[nodiscard]] const PostprocessingBlocks& postprocessing() const { return pp_; }

  [[nodiscard]] int num_fields() const { return problem_.num_fields(); }
  [[nodiscard]] int num_unknowns() const;
  [[nodiscard]] int alpha_offset(int field) const;
  [[nodiscard]] int beta_offset(int field) const;
  [[nodiscard]] int zeta_offset(int field) const;

  [[nodiscard]] Eigen::VectorXd stack(const State& s) const;
  /// Splits x into a State and recomputes gamma.
  [[nodiscard]] State unstack(const Eigen::VectorXd& x, double t) const;
  /// gamma = B11 alpha / D + B12 beta for every field.
  [[nodiscard]] Eigen::VectorXd postprocessed(const Eigen::VectorXd& alpha,
                                              const Eigen::VectorXd& beta) const;

  /// b3 = [(f(t), phi_i)] for all fields.
  [[nodiscard]] Eigen::VectorXd source_vector(double t) const;

  /// Projected initial data with alpha and zeta from one linear solve of
  /// the flux and trace rows at fixed beta.
  [[nodiscard]] State initial_state() const;
  /// alpha and zeta consistent with the given beta (same linear solve).
  [[nodiscard]] State consistent_state(const Eigen::VectorXd& beta, double t) const;

  /// Backward-Euler context: b = b3(t) + M/dt beta_prev.
  [[nodiscard]] StepContext backward_euler_context(const Eigen::VectorXd& beta_prev, double t,
                                                   double dt) const;
  /// Context for advancing `prev` by dt under the configured scheme.
  [[nodiscard]] StepContext step_context(const State& prev, double dt) const;

  /// G(x) = K x + F(x) - b.
  [[nodiscard]] Eigen::VectorXd residual(const Eigen::VectorXd& x, const StepContext& ctx) const;
  /// G'(x) assembled from the global sparse matrices.
  [[nodiscard]] SparseMatrix jacobian_matrix(const Eigen::VectorXd& x, const StepContext& ctx) const;
  /// G'(x) as element blocks for condensation.
  [[nodiscard]] JacobianBlocks jacobian(const Eigen::VectorXd& x, const StepContext& ctx) const;

  /// Never throws on non-convergence; check log.converged.
  NewtonResult newton_solve(const Eigen::VectorXd& x0, const StepContext& ctx);

  /// Throws NonConvergenceError.
  State step(const State& state, double dt, StepLog* log = nullptr);

  /// Steps from initial_state() to final_time; the observer sees every
  /// state including the initial one.
  RunResult run(const std::function<void(const State&, const StepLog*)>& observer = {});

  /// Step sizes used by run(): uniform, with the last one shortened if
  /// final_time is not a multiple of dt.
  [[nodiscard]] std::vector<double> time_steps() const;

 private:
  [[nodiscard]] Eigen::VectorXd nodal_reaction(const Eigen::VectorXd& gamma) const;
  [[nodiscard]] Eigen::VectorXd nodal_reaction_jacobian(const Eigen::VectorXd& gamma) const;
  /// Middle-row spatial operator A4^T alpha + A6 beta - A7 zeta + A9 F.
  [[nodiscard]] Eigen::VectorXd spatial_operator(const Eigen::VectorXd& x) const;

  std::shared_ptr<const Discretization> disc_;
  ProblemSpec problem_;
  SolverConfig config_;
  SystemMatrices sys_;
  PostprocessingBlocks pp_;
  TraceSystemSolver trace_solver_;
  /// Basis values and physical points at the data quadrature points.
  QuadratureRule data_rule_;
  std::vector<Eigen::VectorXd> data_basis_;
  std::vector<std::vector<Point>> data_points_;
};

}  // namespace ihdg

#endif  // IHDG_SOLVER_HPP
