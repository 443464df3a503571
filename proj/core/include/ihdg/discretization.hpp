// A mesh together with the reference bases and dof numbering for one degree.

#ifndef IHDG_DISCRETIZATION_HPP
#define IHDG_DISCRETIZATION_HPP

#include <utility>

#include "ihdg/dof_layout.hpp"
#include "ihdg/mesh.hpp"
#include "ihdg/quadrature.hpp"
#include "ihdg/reference_element.hpp"

namespace ihdg {

/// Exactness of the rule used for assembled volume integrals.
constexpr int volume_exactness(int k) { return 2 * (k + 1) + 2; }
/// Exactness of the rule used for assembled face integrals.
constexpr int edge_exactness(int k) { return 2 * k + 2; }
/// Exactness used for data integrals (sources, projections, error norms).
constexpr int data_exactness(int k) { return 2 * (k + 1) + 4; }

struct Discretization {
  Discretization(Mesh m, int degree, BoundaryCondition bc)
      : mesh(std::move(m)), ref(build_reference(degree)), layout(mesh, degree, bc) {}

  [[nodiscard]] int k() const { return ref.k; }

  Mesh mesh;
  ReferenceElement ref;
  DofLayout layout;
};

}  // namespace ihdg

#endif  // IHDG_DISCRETIZATION_HPP
