#include "ihdg/assembly.hpp"

#include <cmath>
#include <ostream>
#include <string>

#include <Eigen/LU>

namespace ihdg {

namespace {

using Triplets = std::vector<Eigen::Triplet<double>>;

void add_block(Triplets& t, const Eigen::MatrixXd& block, const std::vector<int>& rows,
               const std::vector<int>& cols) {
  for (Eigen::Index i = 0; i < block.rows(); ++i) {
    if (rows[i] < 0) continue;
    for (Eigen::Index j = 0; j < block.cols(); ++j) {
      if (cols[j] < 0) continue;
      t.emplace_back(rows[i], cols[j], block(i, j));
    }
  }
}

SparseMatrix finalize(int rows, int cols, const Triplets& t) {
  SparseMatrix m(rows, cols);
  m.setFromTriplets(t.begin(), t.end());
  m.prune([](Eigen::Index, Eigen::Index, double v) { return v != 0.0; });
  m.makeCompressed();
  return m;
}

ElementBlocks assemble_element(const Discretization& disc, int e, double tau,
                               const QuadratureRule& vol, const EdgeQuadratureRule& edge) {
  const Mesh& mesh = disc.mesh;
  const auto& ref = disc.ref;
  const int nk = ref.scalar.size();
  const int nz = ref.enriched.size();
  const int nf = ref.trace.size();

  ElementBlocks b;
  b.A1 = Eigen::MatrixXd::Zero(nz, nz);
  b.A2 = Eigen::MatrixXd::Zero(nz, 2 * nk);
  b.A4 = Eigen::MatrixXd::Zero(2 * nk, nk);
  b.A5 = Eigen::MatrixXd::Zero(2 * nk, 3 * nf);
  b.A6 = Eigen::MatrixXd::Zero(nk, nk);
  b.A7 = Eigen::MatrixXd::Zero(nk, 3 * nf);
  b.A8 = Eigen::MatrixXd::Zero(3 * nf, 3 * nf);
  b.A9 = Eigen::MatrixXd::Zero(nk, nz);
  b.M = Eigen::MatrixXd::Zero(nk, nk);
  b.b1 = Eigen::VectorXd::Zero(nz);
  b.b2 = Eigen::VectorXd::Zero(nk);

  const AffineMap map(mesh.element_vertices(e));
  const double jac = std::abs(map.det());
  for (std::size_t p = 0; p < vol.size(); ++p) {
    const Point& xi = vol.points[p];
    const double w = vol.weights[p] * jac;
    const Eigen::VectorXd phi = ref.scalar.values(xi);
    const Eigen::MatrixX2d gphi = map.physical_gradients(ref.scalar.gradients(xi));
    const Eigen::VectorXd chi = ref.enriched.values(xi);
    const Eigen::MatrixX2d gchi = map.physical_gradients(ref.enriched.gradients(xi));

    b.A1.noalias() += w * gchi * gchi.transpose();
    for (int c = 0; c < 2; ++c) {
      b.A2.block(0, c * nk, nz, nk).noalias() += w * gchi.col(c) * phi.transpose();
      b.A4.block(c * nk, 0, nk, nk).noalias() += w * gphi.col(c) * phi.transpose();
    }
    b.A9.noalias() += w * phi * chi.transpose();
    b.M.noalias() += w * phi * phi.transpose();
    b.b1 += w * chi;
    b.b2 += w * phi;
  }
  b.A3 = Eigen::MatrixXd::Zero(2 * nk, 2 * nk);
  b.A3.topLeftCorner(nk, nk) = b.M;
  b.A3.bottomRightCorner(nk, nk) = b.M;

  const auto& tri = mesh.elements()[e];
  b.trace_index.assign(static_cast<std::size_t>(3 * nf), -1);
  for (int i = 0; i < 3; ++i) {
    const int fi = mesh.element_faces(e)[i];
    const Face& face = mesh.faces()[fi];
    const bool forward = face.vertices[0] == tri[(i + 1) % 3];
    const Point normal = mesh.outward_normal(e, i);
    for (int j = 0; j < nf; ++j) b.trace_index[i * nf + j] = disc.layout.trace(fi, j);
    for (std::size_t p = 0; p < edge.size(); ++p) {
      const double s = edge.points[p];
      const double w = edge.weights[p] * face.length;
      const Eigen::VectorXd phi = ref.scalar.values(ReferenceElement::face_point(i, forward ? s : 1.0 - s));
      const Eigen::VectorXd psi = ref.trace.values(s);
      for (int c = 0; c < 2; ++c) {
        b.A5.block(c * nk, i * nf, nk, nf).noalias() += w * normal[c] * phi * psi.transpose();
      }
      b.A6.noalias() += w * tau * phi * phi.transpose();
      b.A7.block(0, i * nf, nk, nf).noalias() += w * tau * phi * psi.transpose();
      b.A8.block(i * nf, i * nf, nf, nf).noalias() += w * tau * psi * psi.transpose();
    }
  }
  return b;
}

std::vector<int> range(int start, int count) {
  std::vector<int> r(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) r[i] = start + i;
  return r;
}

}  // namespace

AssemblyCounters& assembly_counters() {
  static AssemblyCounters counters;
  return counters;
}

SystemMatrices assemble_system(const Discretization& disc, const std::vector<double>& tau) {
  const Mesh& mesh = disc.mesh;
  const auto& layout = disc.layout;
  if (tau.size() != mesh.num_elements()) {
    throw std::invalid_argument("assemble_system: tau must have one value per element");
  }
  if (layout.degree() != disc.ref.k) {
    throw std::invalid_argument("assemble_system: layout degree does not match reference degree");
  }
  for (std::size_t e = 0; e < tau.size(); ++e) {
    if (!(tau[e] > 0.0) || !std::isfinite(tau[e])) {
      throw std::invalid_argument("assemble_system: tau must be positive and finite on element " +
                                  std::to_string(e));
    }
  }
  ++assembly_counters().system;

  const int k = disc.k();
  const int nk = layout.scalar_size();
  const int nz = layout.enriched_size();
  const auto vol = triangle_quadrature(volume_exactness(k));
  const auto edge = edge_quadrature(edge_exactness(k));

  SystemMatrices sys;
  sys.k = k;
  sys.tau = tau;
  sys.elements.reserve(mesh.num_elements());

  Triplets t1, t2, t3, t4, t5, t6, t7, t8, t9, tm;
  sys.b1 = Eigen::VectorXd::Zero(layout.n_enriched());
  sys.b2 = Eigen::VectorXd::Zero(layout.n_scalar());
  for (int e = 0; e < static_cast<int>(mesh.num_elements()); ++e) {
    ElementBlocks b = assemble_element(disc, e, tau[e], vol, edge);
    const auto zi = range(layout.enriched(e, 0), nz);
    const auto vi = range(layout.flux(e, 0, 0), 2 * nk);
    const auto wi = range(layout.scalar(e, 0), nk);
    add_block(t1, b.A1, zi, zi);
    add_block(t2, b.A2, zi, vi);
    add_block(t3, b.A3, vi, vi);
    add_block(t4, b.A4, vi, wi);
    add_block(t5, b.A5, vi, b.trace_index);
    add_block(t6, b.A6, wi, wi);
    add_block(t7, b.A7, wi, b.trace_index);
    add_block(t8, b.A8, b.trace_index, b.trace_index);
    add_block(t9, b.A9, wi, zi);
    add_block(tm, b.M, wi, wi);
    sys.b1.segment(zi.front(), nz) = b.b1;
    sys.b2.segment(wi.front(), nk) = b.b2;
    sys.elements.push_back(std::move(b));
  }
  const int n1 = layout.n_flux();
  const int n2 = layout.n_scalar();
  const int n3 = layout.n_enriched();
  const int n4 = layout.n_trace();
  sys.A1 = finalize(n3, n3, t1);
  sys.A2 = finalize(n3, n1, t2);
  sys.A3 = finalize(n1, n1, t3);
  sys.A4 = finalize(n1, n2, t4);
  sys.A5 = finalize(n1, n4, t5);
  sys.A6 = finalize(n2, n2, t6);
  sys.A7 = finalize(n2, n4, t7);
  sys.A8 = finalize(n4, n4, t8);
  sys.A9 = finalize(n2, n3, t9);
  sys.M = finalize(n2, n2, tm);
  return sys;
}

PostprocessingBlocks build_postprocessing_blocks(const SystemMatrices& sys) {
  ++assembly_counters().postprocessing;
  PostprocessingBlocks pp;
  const auto ne = sys.elements.size();
  pp.B11.reserve(ne);
  pp.B12.reserve(ne);
  pp.B21.reserve(ne);
  pp.B22.reserve(ne);
  Triplets t11, t12;
  for (std::size_t e = 0; e < ne; ++e) {
    const ElementBlocks& b = sys.elements[e];
    const auto nz = b.A1.rows();
    const auto nv = b.A2.cols();
    const auto nk = b.M.rows();
    Eigen::MatrixXd saddle = Eigen::MatrixXd::Zero(nz + 1, nz + 1);
    saddle.topLeftCorner(nz, nz) = b.A1;
    saddle.block(0, nz, nz, 1) = b.b1;
    saddle.block(nz, 0, 1, nz) = b.b1.transpose();
    Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(nz + 1, nv + nk);
    rhs.topLeftCorner(nz, nv) = -b.A2;
    rhs.block(nz, nv, 1, nk) = b.b2.transpose();

    Eigen::FullPivLU<Eigen::MatrixXd> lu(saddle);
    if (!lu.isInvertible()) {
      throw std::runtime_error("build_postprocessing_blocks: singular local saddle point on element " +
                               std::to_string(e));
    }
    const Eigen::MatrixXd sol = lu.solve(rhs);
    const double residual = (saddle * sol - rhs).cwiseAbs().maxCoeff();
    const double scale = std::max(1.0, saddle.cwiseAbs().maxCoeff() * sol.cwiseAbs().maxCoeff());
    if (residual > 1e-10 * scale) {
      throw std::runtime_error("build_postprocessing_blocks: inaccurate local solve on element " +
                               std::to_string(e));
    }
    pp.B11.push_back(sol.topLeftCorner(nz, nv));
    pp.B12.push_back(sol.topRightCorner(nz, nk));
    pp.B21.push_back(sol.block(nz, 0, 1, nv));
    pp.B22.push_back(sol.block(nz, nv, 1, nk));
    const int ei = static_cast<int>(e);
    const auto zi = range(ei * static_cast<int>(nz), static_cast<int>(nz));
    add_block(t11, pp.B11.back(), zi, range(ei * static_cast<int>(nv), static_cast<int>(nv)));
    add_block(t12, pp.B12.back(), zi, range(ei * static_cast<int>(nk), static_cast<int>(nk)));
  }
  const auto n3 = static_cast<int>(sys.A1.rows());
  pp.B11_global = finalize(n3, static_cast<int>(sys.A3.rows()), t11);
  pp.B12_global = finalize(n3, static_cast<int>(sys.M.rows()), t12);
  return pp;
}

Eigen::VectorXd postprocess(const PostprocessingBlocks& pp, const Eigen::VectorXd& alpha,
                            const Eigen::VectorXd& beta) {
  return pp.B11_global * alpha + pp.B12_global * beta;
}

Eigen::VectorXd nonlinear_product(const SystemMatrices& sys, const std::function<double(double)>& F,
                                  const Eigen::VectorXd& gamma) {
  Eigen::VectorXd values(gamma.size());
  for (Eigen::Index i = 0; i < gamma.size(); ++i) {
    values[i] = F(gamma[i]);
    if (!std::isfinite(values[i])) {
      throw NonFiniteValueError(static_cast<int>(i), "nonlinear_product: non-finite F");
    }
  }
  return sys.A9 * values;
}

JacobianPair jacobian_blocks(const SystemMatrices& sys, const PostprocessingBlocks& pp,
                             const std::function<double(double)>& dF, const Eigen::VectorXd& alpha,
                             const Eigen::VectorXd& beta) {
  const Eigen::VectorXd gamma = postprocess(pp, alpha, beta);
  Eigen::VectorXd d(gamma.size());
  for (Eigen::Index i = 0; i < gamma.size(); ++i) {
    d[i] = dF(gamma[i]);
    if (!std::isfinite(d[i])) {
      throw NonFiniteValueError(static_cast<int>(i), "jacobian_blocks: non-finite F'");
    }
  }
  const SparseMatrix weighted = sys.A9 * d.asDiagonal();
  JacobianPair out;
  out.A10 = weighted * pp.B11_global;
  out.A11 = weighted * pp.B12_global;
  out.A10.prune([](Eigen::Index, Eigen::Index, double v) { return v != 0.0; });
  out.A11.prune([](Eigen::Index, Eigen::Index, double v) { return v != 0.0; });
  return out;
}

void write_triplets(const SparseMatrix& m, std::ostream& out) {
  const auto old = out.precision(17);
  for (Eigen::Index r = 0; r < m.outerSize(); ++r) {
    for (SparseMatrix::InnerIterator it(m, r); it; ++it) {
      out << it.row() << ' ' << it.col() << ' ' << it.value() << '\n';
    }
  }
  out.precision(old);
}

}  // namespace ihdg
