// Projections and interpolation of analytic data into the discrete spaces.

#ifndef IHDG_PROJECTIONS_HPP
#define IHDG_PROJECTIONS_HPP

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "ihdg/discretization.hpp"

namespace ihdg {

using ScalarField = std::function<double(const Point&)>;
using VectorField = std::function<Eigen::Vector2d(const Point&)>;

/// An element-local linear system that could not be solved.
class SingularLocalSystemError : public std::runtime_error {
 public:
  SingularLocalSystemError(int element, const std::string& what)
      : std::runtime_error(what + " (element " + std::to_string(element) + ")"), element_(element) {}
  [[nodiscard]] int element() const { return element_; }

 private:
  int element_;
};

struct HdgProjection {
  Eigen::VectorXd flux;    ///< V_h coefficients
  Eigen::VectorXd scalar;  ///< W_h coefficients
};

/// HDG projection (Pi_V q, Pi_W u): on every element, volume moments
/// against P^(k-1) and face moments of (Pi_V q . n + tau Pi_W u) against
/// P^k(e) match those of the data. tau is constant per element and must be
/// non-negative; a zero tau makes the local system singular.
HdgProjection hdg_project(const VectorField& q, const ScalarField& u, const Discretization& disc,
                          const std::vector<double>& tau);

/// Elementwise L2 projection onto P^degree, coefficients in the uniform
/// lattice Lagrange basis of that degree, element-major.
Eigen::VectorXd l2_project_element(const ScalarField& f, const Mesh& mesh, int degree);

/// Facewise L2 projection onto P^k(e) for every face (boundary faces
/// included); coefficient (face, j) at index face * (k + 1) + j, with the
/// edge parameter running from face.vertices[0] to face.vertices[1].
Eigen::VectorXd l2_project_face(const ScalarField& f, const Mesh& mesh, int k);

/// Elementwise nodal interpolation into Z_h.
Eigen::VectorXd interpolate_Ih(const ScalarField& f, const Discretization& disc);

}  // namespace ihdg

#endif  // IHDG_PROJECTIONS_HPP
