// Quadrature rules on the reference triangle {x, y >= 0, x + y <= 1} and
// on the reference edge [0, 1].

#ifndef IHDG_QUADRATURE_HPP
#define IHDG_QUADRATURE_HPP

#include <vector>

#include "ihdg/mesh.hpp"

namespace ihdg {

inline constexpr int kMaxQuadratureExactness = 20;

struct QuadratureRule {
  std::vector<Point> points;
  /// Weights sum to the reference area 1/2.
  std::vector<double> weights;
  int exactness = 0;

  [[nodiscard]] std::size_t size() const { return weights.size(); }
};

struct EdgeQuadratureRule {
  std::vector<double> points;
  /// Weights sum to 1.
  std::vector<double> weights;
  int exactness = 0;

  [[nodiscard]] std::size_t size() const { return weights.size(); }
};

/// Gauss-Jacobi nodes and weights on [-1, 1] for the weight
/// (1 - x)^a (1 + x)^b, computed by the Golub-Welsch eigenvalue method.
void gauss_jacobi(int npoints, double a, double b, std::vector<double>& nodes,
                  std::vector<double>& weights);

/// Rule exact for polynomials of total degree <= exactness. Degree <= 1
/// returns the centroid rule; higher degrees use a collapsed
/// (Gauss-Legendre x Gauss-Jacobi) product rule.
QuadratureRule triangle_quadrature(int exactness);

/// Gauss-Legendre rule on [0, 1] exact up to the requested degree.
EdgeQuadratureRule edge_quadrature(int exactness);

}  // namespace ihdg

#endif  // IHDG_QUADRATURE_HPP
