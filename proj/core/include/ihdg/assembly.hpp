// One-time assembly of the HDG matrices and the local postprocessing
// operator, plus the iterate-dependent nonlinear products.
//
// Every volume matrix is block diagonal per element and every face matrix
// couples an element only to its own faces, so the per-element dense blocks
// are kept alongside the global sparse matrices. The solver's local
// elimination works on the blocks; the residual works on the sparse form.

#ifndef IHDG_ASSEMBLY_HPP
#define IHDG_ASSEMBLY_HPP

#include <atomic>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "ihdg/discretization.hpp"

namespace ihdg {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

/// Raised when a nonlinearity or its derivative returns a non-finite value.
class NonFiniteValueError : public std::runtime_error {
 public:
  NonFiniteValueError(int node, const std::string& what)
      : std::runtime_error(what + " at node " + std::to_string(node)), node_(node) {}
  [[nodiscard]] int node() const { return node_; }

 private:
  int node_;
};

/// Dense blocks of one element. Local orderings: flux [x (nk), y (nk)];
/// trace [face 0 (k+1), face 1, face 2] with the edge parameter of the
/// global face.
struct ElementBlocks {
  Eigen::MatrixXd A1;  ///< nz x nz   (grad chi_j, grad chi_i)
  Eigen::MatrixXd A2;  ///< nz x 2nk  (phi_vec_j, grad chi_i)
  Eigen::MatrixXd A3;  ///< 2nk x 2nk (phi_vec_j, phi_vec_i)
  Eigen::MatrixXd A4;  ///< 2nk x nk  (phi_j, div phi_vec_i)
  Eigen::MatrixXd A5;  ///< 2nk x 3nf <psi_j, phi_vec_i . n>
  Eigen::MatrixXd A6;  ///< nk x nk   <tau phi_j, phi_i>
  Eigen::MatrixXd A7;  ///< nk x 3nf  <tau psi_j, phi_i>
  Eigen::MatrixXd A8;  ///< 3nf x 3nf <tau psi_j, psi_i>, this element's side only
  Eigen::MatrixXd A9;  ///< nk x nz   (chi_j, phi_i)
  Eigen::MatrixXd M;   ///< nk x nk   (phi_j, phi_i)
  Eigen::VectorXd b1;  ///< nz        (chi_j, 1)
  Eigen::VectorXd b2;  ///< nk        (phi_j, 1)
  /// Global M_h index of each local trace dof, -1 if the face has none.
  std::vector<int> trace_index;
};

struct SystemMatrices {
  int k = 0;
  std::vector<double> tau;
  std::vector<ElementBlocks> elements;

  SparseMatrix A1, A2, A3, A4, A5, A6, A7, A8, A9, M;
  Eigen::VectorXd b1, b2;
};

/// Local postprocessing operator: on each element
///   [A1 b1; b1^T 0]^{-1} [-A2 0; 0 b2^T] = [B11 B12; B21 B22],
/// so gamma = B11 alpha + B12 beta and the mean-value multiplier is
/// eta = B21 alpha + B22 beta.
struct PostprocessingBlocks {
  std::vector<Eigen::MatrixXd> B11;  ///< nz x 2nk
  std::vector<Eigen::MatrixXd> B12;  ///< nz x nk
  std::vector<Eigen::RowVectorXd> B21;
  std::vector<Eigen::RowVectorXd> B22;
  SparseMatrix B11_global;  ///< N3 x N1
  SparseMatrix B12_global;  ///< N3 x N2
};

struct AssemblyCounters {
  std::atomic<long> system{0};
  std::atomic<long> postprocessing{0};

  void reset() {
    system = 0;
    postprocessing = 0;
  }
};

/// Process-wide instrumentation of how often the one-time builders run.
AssemblyCounters& assembly_counters();

/// tau holds one non-negative value per element, positive on every element.
SystemMatrices assemble_system(const Discretization& disc, const std::vector<double>& tau);

PostprocessingBlocks build_postprocessing_blocks(const SystemMatrices& sys);

/// gamma = B11 alpha + B12 beta.
Eigen::VectorXd postprocess(const PostprocessingBlocks& pp, const Eigen::VectorXd& alpha,
                            const Eigen::VectorXd& beta);

/// A9 * [F(gamma_1), ..., F(gamma_N3)]^T.
Eigen::VectorXd nonlinear_product(const SystemMatrices& sys, const std::function<double(double)>& F,
                                  const Eigen::VectorXd& gamma);

struct JacobianPair {
  SparseMatrix A10;  ///< N2 x N1
  SparseMatrix A11;  ///< N2 x N2
};

/// A10 = A9 diag(F'(gamma)) B11 and A11 = A9 diag(F'(gamma)) B12 with
/// gamma = B11 alpha + B12 beta.
JacobianPair jacobian_blocks(const SystemMatrices& sys, const PostprocessingBlocks& pp,
                             const std::function<double(double)>& dF, const Eigen::VectorXd& alpha,
                             const Eigen::VectorXd& beta);

/// One "row col value" line per stored entry.
void write_triplets(const SparseMatrix& m, std::ostream& out);

}  // namespace ihdg

#endif  // IHDG_ASSEMBLY_HPP
