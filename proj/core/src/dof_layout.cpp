#include "ihdg/dof_layout.hpp"

#include <stdexcept>
#include <string>

#include "ihdg/reference_element.hpp"

namespace ihdg {

DofLayout::DofLayout(const Mesh& mesh, int k, BoundaryCondition bc)
    : k_(k), bc_(bc), nk_(triangle_dim(k)), nz_(triangle_dim(k + 1)) {
  if (k < 0 || k > kMaxDegree) {
    throw std::invalid_argument("unsupported polynomial degree k=" + std::to_string(k));
  }
  const auto ne = static_cast<int>(mesh.num_elements());
  n1_ = 2 * nk_ * ne;
  n2_ = nk_ * ne;
  n3_ = nz_ * ne;
  face_slot_.assign(mesh.num_faces(), -1);
  int slots = 0;
  for (std::size_t f = 0; f < mesh.num_faces(); ++f) {
    if (bc == BoundaryCondition::Neumann || !mesh.faces()[f].is_boundary()) {
      face_slot_[f] = slots++;
    }
  }
  n4_ = slots * (k + 1);
}

}  // namespace ihdg
