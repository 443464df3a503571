// Global numbering of the discrete spaces V_h (vector P^k per element),
// W_h (P^k per element), Z_h (P^(k+1) per element) and M_h (P^k per face).

#ifndef IHDG_DOF_LAYOUT_HPP
#define IHDG_DOF_LAYOUT_HPP

#include <vector>

#include "ihdg/mesh.hpp"

namespace ihdg {

enum class BoundaryCondition { Dirichlet, Neumann };

class DofLayout {
 public:
  DofLayout(const Mesh& mesh, int k, BoundaryCondition bc);

  [[nodiscard]] int degree() const { return k_; }
  [[nodiscard]] BoundaryCondition boundary_condition() const { return bc_; }

  /// dim P^k, dim P^(k+1) and dim P^k(e).
  [[nodiscard]] int scalar_size() const { return nk_; }
  [[nodiscard]] int enriched_size() const { return nz_; }
  [[nodiscard]] int trace_size() const { return k_ + 1; }

  [[nodiscard]] int n_flux() const { return n1_; }
  [[nodiscard]] int n_scalar() const { return n2_; }
  [[nodiscard]] int n_enriched() const { return n3_; }
  [[nodiscard]] int n_trace() const { return n4_; }

  /// V_h index of component c (0 = x, 1 = y), local node i on element e.
  [[nodiscard]] int flux(int e, int c, int i) const { return (2 * e + c) * nk_ + i; }
  [[nodiscard]] int scalar(int e, int i) const { return e * nk_ + i; }
  [[nodiscard]] int enriched(int e, int i) const { return e * nz_ + i; }
  /// M_h index of face node j, or -1 when the face carries no trace
  /// unknowns (boundary faces under Dirichlet conditions).
  [[nodiscard]] int trace(int face, int j) const {
    const int slot = face_slot_[face];
    return slot < 0 ? -1 : slot * (k_ + 1) + j;
  }
  [[nodiscard]] bool has_trace(int face) const { return face_slot_[face] >= 0; }

 private:
  int k_;
  BoundaryCondition bc_;
  int nk_, nz_;
  int n1_, n2_, n3_, n4_;
  std::vector<int> face_slot_;
};

inline DofLayout build_dof_layout(const Mesh& mesh, int k, BoundaryCondition bc) {
  return DofLayout(mesh, k, bc);
}

}  // namespace ihdg

#endif  // IHDG_DOF_LAYOUT_HPP
