#include "ihdg/solver.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <Eigen/LU>

#include "ihdg/projections.hpp"

namespace ihdg {

namespace {

using Triplets = std::vector<Eigen::Triplet<double>>;

void append(Triplets& t, const SparseMatrix& m, int row0, int col0, double scale = 1.0) {
  for (Eigen::Index r = 0; r < m.outerSize(); ++r) {
    for (SparseMatrix::InnerIterator it(m, r); it; ++it) {
      t.emplace_back(row0 + static_cast<int>(it.row()), col0 + static_cast<int>(it.col()),
                     scale * it.value());
    }
  }
}

void append_transpose(Triplets& t, const SparseMatrix& m, int row0, int col0, double scale = 1.0) {
  for (Eigen::Index r = 0; r < m.outerSize(); ++r) {
    for (SparseMatrix::InnerIterator it(m, r); it; ++it) {
      t.emplace_back(row0 + static_cast<int>(it.col()), col0 + static_cast<int>(it.row()),
                     scale * it.value());
    }
  }
}

struct Elimination {
  std::vector<Eigen::MatrixXd> coupling;  // A^{-1} C per element
  std::vector<Eigen::VectorXd> local;     // A^{-1} r_a per element
  SparseMatrix matrix;
  Eigen::VectorXd rhs;
};

Elimination eliminate(const JacobianBlocks& jac, const Eigen::VectorXd& rhs) {
  const int nt = jac.size - jac.trace_offset;
  Elimination out;
  out.coupling.reserve(jac.elements.size());
  out.local.reserve(jac.elements.size());
  out.rhs = rhs.tail(nt);
  Triplets t;
  for (std::size_t e = 0; e < jac.elements.size(); ++e) {
    const LocalJacobian& lj = jac.elements[e];
    Eigen::VectorXd ra(static_cast<Eigen::Index>(lj.rows.size()));
    for (std::size_t i = 0; i < lj.rows.size(); ++i) ra[static_cast<Eigen::Index>(i)] = rhs[lj.rows[i]];
    Eigen::FullPivLU<Eigen::MatrixXd> lu(lj.A);
    if (!lu.isInvertible()) {
      throw SingularLocalSystemError(static_cast<int>(e), "condensed_solve: singular local block");
    }
    Eigen::MatrixXd xc = lu.solve(lj.C);
    Eigen::VectorXd xr = lu.solve(ra);
    const Eigen::MatrixXd schur = lj.D - lj.E * xc;
    const Eigen::VectorXd reduced = lj.E * xr;
    for (std::size_t i = 0; i < lj.trace_rows.size(); ++i) {
      const int gi = lj.trace_rows[i];
      if (gi < 0) continue;
      const int ri = gi - jac.trace_offset;
      out.rhs[ri] -= reduced[static_cast<Eigen::Index>(i)];
      for (std::size_t j = 0; j < lj.trace_rows.size(); ++j) {
        const int gj = lj.trace_rows[j];
        if (gj < 0) continue;
        t.emplace_back(ri, gj - jac.trace_offset,
                       schur(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
      }
    }
    out.coupling.push_back(std::move(xc));
    out.local.push_back(std::move(xr));
  }
  out.matrix.resize(nt, nt);
  out.matrix.setFromTriplets(t.begin(), t.end());
  out.matrix.makeCompressed();
  return out;
}

}  // namespace

void SolverConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("dt must be positive");
  if (!(final_time >= dt) || !std::isfinite(final_time)) {
    throw std::invalid_argument("final time must be at least dt");
  }
  if (!(newton_tolerance > 0.0)) throw std::invalid_argument("Newton tolerance must be positive");
  if (newton_max_iterations < 1) throw std::invalid_argument("Newton iteration limit must be >= 1");
  if (!(tau > 0.0) || !std::isfinite(tau)) throw std::invalid_argument("tau must be positive");
}

SparseMatrix JacobianBlocks::to_sparse() const {
  Triplets t;
  for (const auto& lj : elements) {
    const auto nl = lj.rows.size();
    const auto ntr = lj.trace_rows.size();
    for (std::size_t i = 0; i < nl; ++i) {
      for (std::size_t j = 0; j < nl; ++j) t.emplace_back(lj.rows[i], lj.rows[j], lj.A(i, j));
      for (std::size_t j = 0; j < ntr; ++j) {
        if (lj.trace_rows[j] >= 0) t.emplace_back(lj.rows[i], lj.trace_rows[j], lj.C(i, j));
      }
    }
    for (std::size_t i = 0; i < ntr; ++i) {
      if (lj.trace_rows[i] < 0) continue;
      for (std::size_t j = 0; j < nl; ++j) t.emplace_back(lj.trace_rows[i], lj.rows[j], lj.E(i, j));
      for (std::size_t j = 0; j < ntr; ++j) {
        if (lj.trace_rows[j] >= 0) t.emplace_back(lj.trace_rows[i], lj.trace_rows[j], lj.D(i, j));
      }
    }
  }
  SparseMatrix m(size, size);
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

Eigen::VectorXd TraceSystemSolver::solve(const SparseMatrix& matrix, const Eigen::VectorXd& rhs) {
  if (matrix.rows() == 0) return Eigen::VectorXd(0);
  if (kind_ == LinearSolverKind::Dense) {
    Eigen::FullPivLU<Eigen::MatrixXd> lu{Eigen::MatrixXd(matrix)};
    if (!lu.isInvertible()) throw SingularSystemError("condensed trace matrix is singular");
    return lu.solve(rhs);
  }
  const Eigen::SparseMatrix<double> colmajor = matrix;
  if (!analyzed_ || colmajor.nonZeros() != analyzed_nnz_) {
    lu_.analyzePattern(colmajor);
    analyzed_ = true;
    analyzed_nnz_ = colmajor.nonZeros();
  }
  lu_.factorize(colmajor);
  if (lu_.info() != Eigen::Success) {
    throw SingularSystemError("condensed trace matrix is singular: " + lu_.lastErrorMessage());
  }
  return lu_.solve(rhs);
}

TraceSystem condensed_trace_system(const JacobianBlocks& jac, const Eigen::VectorXd& rhs) {
  Elimination el = eliminate(jac, rhs);
  return {std::move(el.matrix), std::move(el.rhs)};
}

Eigen::VectorXd condensed_solve(const JacobianBlocks& jac, const Eigen::VectorXd& rhs,
                                TraceSystemSolver& trace_solver) {
  const Elimination el = eliminate(jac, rhs);
  const Eigen::VectorXd traces = trace_solver.solve(el.matrix, el.rhs);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(jac.size);
  x.tail(jac.size - jac.trace_offset) = traces;
  for (std::size_t e = 0; e < jac.elements.size(); ++e) {
    const LocalJacobian& lj = jac.elements[e];
    Eigen::VectorXd z = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(lj.trace_rows.size()));
    for (std::size_t i = 0; i < lj.trace_rows.size(); ++i) {
      if (lj.trace_rows[i] >= 0) z[static_cast<Eigen::Index>(i)] = x[lj.trace_rows[i]];
    }
    const Eigen::VectorXd a = el.local[e] - el.coupling[e] * z;
    for (std::size_t i = 0; i < lj.rows.size(); ++i) x[lj.rows[i]] = a[static_cast<Eigen::Index>(i)];
  }
  return x;
}

Eigen::VectorXd condensed_solve(const JacobianBlocks& jac, const Eigen::VectorXd& rhs,
                                LinearSolverKind kind) {
  TraceSystemSolver solver(kind);
  return condensed_solve(jac, rhs, solver);
}

std::string format_step_log(const StepLog& log) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "step %d %.10g %.6e %.6e %d", log.step, log.t,
                log.newton.initial_residual, log.newton.final_residual, log.newton.iterations);
  return buf;
}

HdgSolver::HdgSolver(std::shared_ptr<const Discretization> disc, ProblemSpec problem,
                     SolverConfig config)
    : disc_(std::move(disc)),
      problem_(std::move(problem)),
      config_(config),
      trace_solver_(config.linear_solver) {
  config_.validate();
  if (problem_.num_fields() < 1) throw std::invalid_argument("problem has no fields");
  if (disc_->layout.boundary_condition() != problem_.bc) {
    throw std::invalid_argument("discretization boundary condition does not match the problem");
  }
  const std::vector<double> tau(disc_->mesh.num_elements(), config_.tau);
  sys_ = assemble_system(*disc_, tau);
  pp_ = build_postprocessing_blocks(sys_);

  data_rule_ = triangle_quadrature(data_exactness(disc_->k()));
  for (const auto& p : data_rule_.points) data_basis_.push_back(disc_->ref.scalar.values(p));
  data_points_.resize(disc_->mesh.num_elements());
  for (std::size_t e = 0; e < disc_->mesh.num_elements(); ++e) {
    const AffineMap map(disc_->mesh.element_vertices(e));
    for (const auto& p : data_rule_.points) data_points_[e].push_back(map.to_physical(p));
  }
}

int HdgSolver::num_unknowns() const {
  const auto& l = disc_->layout;
  return num_fields() * (l.n_flux() + l.n_scalar() + l.n_trace());
}

int HdgSolver::alpha_offset(int field) const { return field * disc_->layout.n_flux(); }

int HdgSolver::beta_offset(int field) const {
  return num_fields() * disc_->layout.n_flux() + field * disc_->layout.n_scalar();
}

int HdgSolver::zeta_offset(int field) const {
  const auto& l = disc_->layout;
  return num_fields() * (l.n_flux() + l.n_scalar()) + field * l.n_trace();
}

Eigen::VectorXd HdgSolver::stack(const State& s) const {
  Eigen::VectorXd x(num_unknowns());
  x << s.alpha, s.beta, s.zeta;
  return x;
}

State HdgSolver::unstack(const Eigen::VectorXd& x, double t) const {
  const auto& l = disc_->layout;
  const int m = num_fields();
  State s;
  s.t = t;
  s.alpha = x.segment(0, m * l.n_flux());
  s.beta = x.segment(m * l.n_flux(), m * l.n_scalar());
  s.zeta = x.segment(m * (l.n_flux() + l.n_scalar()), m * l.n_trace());
  s.gamma = postprocessed(s.alpha, s.beta);
  return s;
}

Eigen::VectorXd HdgSolver::postprocessed(const Eigen::VectorXd& alpha, const Eigen::VectorXd& beta) const {
  const auto& l = disc_->layout;
  const int m = num_fields();
  Eigen::VectorXd gamma(m * l.n_enriched());
  for (int c = 0; c < m; ++c) {
    gamma.segment(c * l.n_enriched(), l.n_enriched()) =
        pp_.B11_global * alpha.segment(c * l.n_flux(), l.n_flux()) / problem_.diffusion[c] +
        pp_.B12_global * beta.segment(c * l.n_scalar(), l.n_scalar());
  }
  return gamma;
}

Eigen::VectorXd HdgSolver::source_vector(double t) const {
  const auto& l = disc_->layout;
  const int nk = l.scalar_size();
  Eigen::VectorXd b = Eigen::VectorXd::Zero(num_fields() * l.n_scalar());
  if (problem_.source.empty()) return b;
  for (int c = 0; c < num_fields(); ++c) {
    const auto& f = problem_.source[c];
    for (std::size_t e = 0; e < disc_->mesh.num_elements(); ++e) {
      const double jac = 2.0 * disc_->mesh.area(e);
      Eigen::VectorXd local = Eigen::VectorXd::Zero(nk);
      for (std::size_t p = 0; p < data_rule_.size(); ++p) {
        local += data_rule_.weights[p] * jac * f(t, data_points_[e][p]) * data_basis_[p];
      }
      b.segment(c * l.n_scalar() + l.scalar(static_cast<int>(e), 0), nk) = local;
    }
  }
  return b;
}

Eigen::VectorXd HdgSolver::nodal_reaction(const Eigen::VectorXd& gamma) const {
  const int m = num_fields();
  const int n3 = disc_->layout.n_enriched();
  Eigen::VectorXd out(m * n3);
  std::vector<double> u(m), F(m);
  for (int i = 0; i < n3; ++i) {
    for (int c = 0; c < m; ++c) u[c] = gamma[c * n3 + i];
    problem_.reaction.value(u, F);
    for (int c = 0; c < m; ++c) {
      if (!std::isfinite(F[c])) throw NonFiniteValueError(i, "reaction: non-finite F");
      out[c * n3 + i] = F[c];
    }
  }
  return out;
}

Eigen::VectorXd HdgSolver::nodal_reaction_jacobian(const Eigen::VectorXd& gamma) const {
  const int m = num_fields();
  const int n3 = disc_->layout.n_enriched();
  Eigen::VectorXd out(m * m * n3);
  std::vector<double> u(m), dF(m * m);
  for (int i = 0; i < n3; ++i) {
    for (int c = 0; c < m; ++c) u[c] = gamma[c * n3 + i];
    problem_.reaction.jacobian(u, dF);
    for (int cd = 0; cd < m * m; ++cd) {
      if (!std::isfinite(dF[cd])) throw NonFiniteValueError(i, "reaction: non-finite F'");
      out[cd * n3 + i] = dF[cd];
    }
  }
  return out;
}

Eigen::VectorXd HdgSolver::spatial_operator(const Eigen::VectorXd& x) const {
  const auto& l = disc_->layout;
  const int m = num_fields();
  const int n1 = l.n_flux(), n2 = l.n_scalar(), n3 = l.n_enriched(), n4 = l.n_trace();
  const Eigen::VectorXd alpha = x.segment(0, m * n1);
  const Eigen::VectorXd beta = x.segment(m * n1, m * n2);
  const Eigen::VectorXd reaction = nodal_reaction(postprocessed(alpha, beta));
  Eigen::VectorXd out(m * n2);
  for (int c = 0; c < m; ++c) {
    out.segment(c * n2, n2) = sys_.A4.transpose() * x.segment(alpha_offset(c), n1) +
                              sys_.A6 * x.segment(beta_offset(c), n2) -
                              sys_.A7 * x.segment(zeta_offset(c), n4) +
                              sys_.A9 * reaction.segment(c * n3, n3);
  }
  return out;
}

StepContext HdgSolver::backward_euler_context(const Eigen::VectorXd& beta_prev, double t, double dt) const {
  StepContext ctx;
  ctx.t = t;
  ctx.dt = dt;
  ctx.theta = 1.0;
  ctx.rhs = source_vector(t);
  const int n2 = disc_->layout.n_scalar();
  for (int c = 0; c < num_fields(); ++c) {
    ctx.rhs.segment(c * n2, n2) += sys_.M * beta_prev.segment(c * n2, n2) / dt;
  }
  return ctx;
}

StepContext HdgSolver::step_context(const State& prev, double dt) const {
  if (config_.scheme == TimeScheme::BackwardEuler) {
    return backward_euler_context(prev.beta, prev.t + dt, dt);
  }
  StepContext ctx = backward_euler_context(prev.beta, prev.t + dt, dt);
  ctx.theta = 0.5;
  const Eigen::VectorXd b_new = source_vector(ctx.t);
  // backward_euler_context added the full b3(t_new); keep half of it.
  ctx.rhs -= 0.5 * b_new;
  ctx.rhs += 0.5 * source_vector(prev.t);
  ctx.rhs -= 0.5 * spatial_operator(stack(prev));
  return ctx;
}

Eigen::VectorXd HdgSolver::residual(const Eigen::VectorXd& x, const StepContext& ctx) const {
  const auto& l = disc_->layout;
  const int m = num_fields();
  const int n1 = l.n_flux(), n2 = l.n_scalar(), n4 = l.n_trace();
  Eigen::VectorXd g(num_unknowns());
  const Eigen::VectorXd spatial = spatial_operator(x);
  for (int c = 0; c < m; ++c) {
    const auto a = x.segment(alpha_offset(c), n1);
    const auto b = x.segment(beta_offset(c), n2);
    const auto z = x.segment(zeta_offset(c), n4);
    g.segment(alpha_offset(c), n1) = sys_.A3 * a / problem_.diffusion[c] - sys_.A4 * b + sys_.A5 * z;
    g.segment(beta_offset(c), n2) =
        sys_.M * b / ctx.dt + ctx.theta * spatial.segment(c * n2, n2) - ctx.rhs.segment(c * n2, n2);
    g.segment(zeta_offset(c), n4) = sys_.A5.transpose() * a + sys_.A7.transpose() * b - sys_.A8 * z;
  }
  return g;
}

SparseMatrix HdgSolver::jacobian_matrix(const Eigen::VectorXd& x, const StepContext& ctx) const {
  const auto& l = disc_->layout;
  const int m = num_fields();
  const int n1 = l.n_flux(), n2 = l.n_scalar(), n3 = l.n_enriched();
  const Eigen::VectorXd gamma =
      postprocessed(x.segment(0, m * n1), x.segment(m * n1, m * n2));
  const Eigen::VectorXd dF = nodal_reaction_jacobian(gamma);
  const double th = ctx.theta;

  Triplets t;
  for (int c = 0; c < m; ++c) {
    const int ra = alpha_offset(c), rb = beta_offset(c), rz = zeta_offset(c);
    append(t, sys_.A3, ra, ra, 1.0 / problem_.diffusion[c]);
    append(t, sys_.A4, ra, rb, -1.0);
    append(t, sys_.A5, ra, rz);
    append_transpose(t, sys_.A4, rb, ra, th);
    append(t, sys_.M, rb, rb, 1.0 / ctx.dt);
    append(t, sys_.A6, rb, rb, th);
    append(t, sys_.A7, rb, rz, -th);
    append_transpose(t, sys_.A5, rz, ra);
    append_transpose(t, sys_.A7, rz, rb);
    append(t, sys_.A8, rz, rz, -1.0);
    for (int d = 0; d < m; ++d) {
      const SparseMatrix weighted = sys_.A9 * dF.segment((c * m + d) * n3, n3).asDiagonal();
      const SparseMatrix a10 = weighted * pp_.B11_global;
      const SparseMatrix a11 = weighted * pp_.B12_global;
      append(t, a10, rb, alpha_offset(d), th / problem_.diffusion[d]);
      append(t, a11, rb, beta_offset(d), th);
    }
  }
  SparseMatrix J(num_unknowns(), num_unknowns());
  J.setFromTriplets(t.begin(), t.end());
  return J;
}

JacobianBlocks HdgSolver::jacobian(const Eigen::VectorXd& x, const StepContext& ctx) const {
  const auto& l = disc_->layout;
  const int m = num_fields();
  const int n1 = l.n_flux(), n2 = l.n_scalar(), n3 = l.n_enriched();
  const int nk = l.scalar_size(), nz = l.enriched_size(), nf = l.trace_size();
  const Eigen::VectorXd gamma = postprocessed(x.segment(0, m * n1), x.segment(m * n1, m * n2));
  const Eigen::VectorXd dF = nodal_reaction_jacobian(gamma);
  const double th = ctx.theta;

  JacobianBlocks jac;
  jac.size = num_unknowns();
  jac.trace_offset = zeta_offset(0);
  const int nl = 3 * nk;   // per-field local unknowns
  const int ntl = 3 * nf;  // per-field local traces
  jac.elements.resize(disc_->mesh.num_elements());
  for (int e = 0; e < static_cast<int>(disc_->mesh.num_elements()); ++e) {
    const ElementBlocks& b = sys_.elements[e];
    LocalJacobian& lj = jac.elements[e];
    lj.A = Eigen::MatrixXd::Zero(m * nl, m * nl);
    lj.C = Eigen::MatrixXd::Zero(m * nl, m * ntl);
    lj.E = Eigen::MatrixXd::Zero(m * ntl, m * nl);
    lj.D = Eigen::MatrixXd::Zero(m * ntl, m * ntl);
    lj.rows.resize(static_cast<std::size_t>(m * nl));
    lj.trace_rows.resize(static_cast<std::size_t>(m * ntl));
    for (int c = 0; c < m; ++c) {
      const int o = c * nl;
      const int ot = c * ntl;
      for (int i = 0; i < 2 * nk; ++i) lj.rows[o + i] = alpha_offset(c) + l.flux(e, 0, 0) + i;
      for (int i = 0; i < nk; ++i) lj.rows[o + 2 * nk + i] = beta_offset(c) + l.scalar(e, i);
      for (int i = 0; i < ntl; ++i) {
        lj.trace_rows[ot + i] = b.trace_index[i] < 0 ? -1 : zeta_offset(c) + b.trace_index[i];
      }
      lj.A.block(o, o, 2 * nk, 2 * nk) = b.A3 / problem_.diffusion[c];
      lj.A.block(o, o + 2 * nk, 2 * nk, nk) = -b.A4;
      lj.A.block(o + 2 * nk, o, nk, 2 * nk) += th * b.A4.transpose();
      lj.A.block(o + 2 * nk, o + 2 * nk, nk, nk) += b.M / ctx.dt + th * b.A6;
      for (int d = 0; d < m; ++d) {
        const int od = d * nl;
        const Eigen::VectorXd w = dF.segment((c * m + d) * n3 + l.enriched(e, 0), nz);
        const Eigen::MatrixXd weighted = b.A9 * w.asDiagonal();
        lj.A.block(o + 2 * nk, od, nk, 2 * nk) +=
            (th / problem_.diffusion[d]) * weighted * pp_.B11[e];
        lj.A.block(o + 2 * nk, od + 2 * nk, nk, nk) += th * weighted * pp_.B12[e];
      }
      lj.C.block(o, ot, 2 * nk, ntl) = b.A5;
      lj.C.block(o + 2 * nk, ot, nk, ntl) = -th * b.A7;
      lj.E.block(ot, o, ntl, 2 * nk) = b.A5.transpose();
      lj.E.block(ot, o + 2 * nk, ntl, nk) = b.A7.transpose();
      lj.D.block(ot, ot, ntl, ntl) = -b.A8;
    }
  }
  return jac;
}

NewtonResult HdgSolver::newton_solve(const Eigen::VectorXd& x0, const StepContext& ctx) {
  NewtonResult out;
  out.x = x0;
  const double tol = config_.newton_tolerance * std::sqrt(static_cast<double>(num_unknowns()));
  Eigen::VectorXd g = residual(out.x, ctx);
  double norm = g.norm();
  out.log.initial_residual = norm;
  out.log.residual_history.push_back(norm);
  while (norm > tol && out.log.iterations < config_.newton_max_iterations) {
    const JacobianBlocks jac = jacobian(out.x, ctx);
    out.x -= condensed_solve(jac, g, trace_solver_);
    g = residual(out.x, ctx);
    norm = g.norm();
    ++out.log.iterations;
    out.log.residual_history.push_back(norm);
    if (!std::isfinite(norm)) break;
  }
  out.log.final_residual = norm;
  out.log.converged = norm <= tol;
  return out;
}

State HdgSolver::step(const State& state, double dt, StepLog* log) {
  const StepContext ctx = step_context(state, dt);
  NewtonResult res = newton_solve(stack(state), ctx);
  if (log) {
    log->t = ctx.t;
    log->newton = res.log;
  }
  if (!res.log.converged) {
    throw NonConvergenceError(ctx.t, res.log.final_residual, res.log.iterations);
  }
  return unstack(res.x, ctx.t);
}

State HdgSolver::consistent_state(const Eigen::VectorXd& beta, double t) const {
  // Flux and trace rows with the scalar rows replaced by beta = given.
  StepContext ctx;
  ctx.dt = 1.0;
  ctx.theta = 0.0;
  JacobianBlocks jac = jacobian(Eigen::VectorXd::Zero(num_unknowns()), ctx);
  const int nk = disc_->layout.scalar_size();
  const int nl = 3 * nk;
  for (auto& lj : jac.elements) {
    for (int c = 0; c < num_fields(); ++c) {
      const int r = c * nl + 2 * nk;
      lj.A.middleRows(r, nk).setZero();
      lj.A.block(r, r, nk, nk).setIdentity();
      lj.C.middleRows(r, nk).setZero();
    }
  }
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(num_unknowns());
  rhs.segment(beta_offset(0), beta.size()) = beta;
  TraceSystemSolver solver(config_.linear_solver);
  const Eigen::VectorXd x = condensed_solve(jac, rhs, solver);
  return unstack(x, t);
}

State HdgSolver::initial_state() const {
  const int m = num_fields();
  const int n2 = disc_->layout.n_scalar();
  Eigen::VectorXd beta(m * n2);
  for (int c = 0; c < m; ++c) {
    if (problem_.initial_projection == InitialProjection::Hdg) {
      if (!problem_.exact) {
        throw std::invalid_argument("HDG initial projection requires the exact flux");
      }
      const auto& uex = problem_.exact->u[c];
      const auto& qex = problem_.exact->q[c];
      const std::vector<double> tau(disc_->mesh.num_elements(), config_.tau);
      const auto proj = hdg_project([&](const Point& x) { return qex(0.0, x); },
                                    [&](const Point& x) { return uex(0.0, x); }, *disc_, tau);
      beta.segment(c * n2, n2) = proj.scalar;
    } else {
      beta.segment(c * n2, n2) = l2_project_element(problem_.initial[c], disc_->mesh, disc_->k());
    }
  }
  return consistent_state(beta, 0.0);
}

std::vector<double> HdgSolver::time_steps() const {
  const double T = config_.final_time;
  const double dt = config_.dt;
  const double ratio = T / dt;
  const double nearest = std::round(ratio);
  std::vector<double> steps;
  if (std::abs(ratio - nearest) <= 1e-9 * std::max(1.0, ratio)) {
    steps.assign(static_cast<std::size_t>(nearest), dt);
  } else {
    const auto full = static_cast<std::size_t>(std::floor(ratio));
    steps.assign(full, dt);
    steps.push_back(T - static_cast<double>(full) * dt);
  }
  return steps;
}

RunResult HdgSolver::run(const std::function<void(const State&, const StepLog*)>& observer) {
  RunResult result;
  State state = initial_state();
  if (observer) observer(state, nullptr);
  const auto steps = time_steps();
  for (std::size_t n = 0; n < steps.size(); ++n) {
    const double target = n + 1 == steps.size() ? config_.final_time
                                                : static_cast<double>(n + 1) * config_.dt;
    StepLog log;
    log.step = static_cast<int>(n + 1);
    state = step(state, target - state.t, &log);
    state.t = target;
    result.steps.push_back(log);
    if (observer) observer(state, &result.steps.back());
  }
  result.final_state = std::move(state);
  return result;
}

}  // namespace ihdg
