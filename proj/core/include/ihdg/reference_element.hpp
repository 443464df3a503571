// Nodal Lagrange bases on the reference triangle and reference edge.

#ifndef IHDG_REFERENCE_ELEMENT_HPP
#define IHDG_REFERENCE_ELEMENT_HPP

#include <vector>

#include <Eigen/Core>

#include "ihdg/mesh.hpp"

namespace ihdg {

inline constexpr int kMaxDegree = 3;

/// dim P^p on a triangle.
constexpr int triangle_dim(int p) { return p < 0 ? 0 : (p + 1) * (p + 2) / 2; }

/// Uniform-lattice Lagrange basis of degree p on the reference triangle
/// with vertices (0,0), (1,0), (0,1). For p = 0 the single node is the
/// centroid.
class LagrangeTriangle {
 public:
  explicit LagrangeTriangle(int degree);

  [[nodiscard]] int degree() const { return degree_; }
  [[nodiscard]] int size() const { return static_cast<int>(nodes_.size()); }
  [[nodiscard]] const std::vector<Point>& nodes() const { return nodes_; }

  [[nodiscard]] Eigen::VectorXd values(const Point& xi) const;
  /// Row i holds the reference gradient of basis function i.
  [[nodiscard]] Eigen::MatrixX2d gradients(const Point& xi) const;

 private:
  [[nodiscard]] Eigen::VectorXd monomials(const Point& xi) const;
  [[nodiscard]] Eigen::MatrixX2d monomial_gradients(const Point& xi) const;

  int degree_;
  std::vector<Point> nodes_;
  std::vector<std::array<int, 2>> exponents_;
  /// Column i holds the monomial coefficients of basis function i.
  Eigen::MatrixXd coefficients_;
};

/// Lagrange basis of degree p on [0, 1] with p + 1 equispaced nodes
/// (the midpoint for p = 0).
class LagrangeEdge {
 public:
  explicit LagrangeEdge(int degree);

  [[nodiscard]] int degree() const { return degree_; }
  [[nodiscard]] int size() const { return degree_ + 1; }
  [[nodiscard]] const std::vector<double>& nodes() const { return nodes_; }
  [[nodiscard]] Eigen::VectorXd values(double s) const;

 private:
  int degree_;
  std::vector<double> nodes_;
};

/// Bases for one HDG degree k: P^k for the flux and scalar spaces, P^(k+1)
/// for the postprocessed scalar, P^k on edges for the trace.
struct ReferenceElement {
  int k = 0;
  LagrangeTriangle scalar;
  LagrangeTriangle enriched;
  LagrangeEdge trace;

  /// Reference point on local face i (opposite vertex i) at edge parameter
  /// s, running from vertex i+1 to vertex i+2.
  [[nodiscard]] static Point face_point(int local_face, double s);
};

/// Throws std::invalid_argument unless 0 <= k <= kMaxDegree.
ReferenceElement build_reference(int k);

/// Affine map from the reference triangle to a physical element.
class AffineMap {
 public:
  explicit AffineMap(const std::array<Point, 3>& vertices);

  [[nodiscard]] Point to_physical(const Point& xi) const { return origin_ + jacobian_ * xi; }
  [[nodiscard]] Point to_reference(const Point& x) const { return inverse_ * (x - origin_); }
  [[nodiscard]] double det() const { return det_; }
  /// Physical gradients from reference gradients (one per row).
  [[nodiscard]] Eigen::MatrixX2d physical_gradients(const Eigen::MatrixX2d& ref) const {
    return ref * inverse_;
  }

 private:
  Point origin_;
  Eigen::Matrix2d jacobian_;
  Eigen::Matrix2d inverse_;
  double det_;
};

}  // namespace ihdg

#endif  // IHDG_REFERENCE_ELEMENT_HPP
