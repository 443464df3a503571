#include "ihdg/quadrature.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

namespace ihdg {

namespace {

void check_exactness(int exactness) {
  if (exactness < 0 || exactness > kMaxQuadratureExactness) {
    throw std::invalid_argument("unsupported quadrature exactness " + std::to_string(exactness) +
                                " (supported: 0.." + std::to_string(kMaxQuadratureExactness) + ")");
  }
}

}  // namespace

void gauss_jacobi(int npoints, double a, double b, std::vector<double>& nodes,
                  std::vector<double>& weights) {
  // Symmetric tridiagonal Jacobi matrix of the monic recurrence.
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(npoints, npoints);
  const double ab = a + b;
  for (int n = 0; n < npoints; ++n) {
    const double denom = (2.0 * n + ab) * (2.0 * n + ab + 2.0);
    jac(n, n) = (n == 0 && std::abs(ab) < 1e-300) ? 0.0
                : (n == 0)                        ? (b - a) / (ab + 2.0)
                                                  : (b * b - a * a) / denom;
    if (n + 1 < npoints) {
      const double m = n + 1.0;
      const double s = 2.0 * m + ab;
      const double beta = 4.0 * m * (m + a) * (m + b) * (m + ab) / (s * s * (s + 1.0) * (s - 1.0));
      jac(n, n + 1) = jac(n + 1, n) = std::sqrt(beta);
    }
  }
  const double mu0 = std::pow(2.0, ab + 1.0) * std::tgamma(a + 1.0) * std::tgamma(b + 1.0) /
                     std::tgamma(ab + 2.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(jac);
  nodes.resize(npoints);
  weights.resize(npoints);
  for (int i = 0; i < npoints; ++i) {
    nodes[i] = eig.eigenvalues()(i);
    const double v0 = eig.eigenvectors()(0, i);
    weights[i] = mu0 * v0 * v0;
  }
}

QuadratureRule triangle_quadrature(int exactness) {
  check_exactness(exactness);
  QuadratureRule rule;
  rule.exactness = exactness;
  if (exactness <= 1) {
    rule.points.emplace_back(1.0 / 3.0, 1.0 / 3.0);
    rule.weights.push_back(0.5);
    return rule;
  }
  const int npts = (exactness + 2) / 2;
  std::vector<double> xl, wl, xj, wj;
  gauss_jacobi(npts, 0.0, 0.0, xl, wl);
  // Weight (1 - v) absorbs the Jacobian of the collapse (u, v) -> (u (1 - v), v).
  gauss_jacobi(npts, 1.0, 0.0, xj, wj);
  rule.points.reserve(static_cast<std::size_t>(npts * npts));
  for (int j = 0; j < npts; ++j) {
    const double v = 0.5 * (xj[j] + 1.0);
    for (int i = 0; i < npts; ++i) {
      const double u = 0.5 * (xl[i] + 1.0);
      rule.points.emplace_back(u * (1.0 - v), v);
      // Map [-1,1]^2 -> [0,1]^2: factor 1/2 per direction, 1/2 from (1 - x)/2.
      rule.weights.push_back(0.125 * wl[i] * wj[j]);
    }
  }
  return rule;
}

EdgeQuadratureRule edge_quadrature(int exactness) {
  check_exactness(exactness);
  EdgeQuadratureRule rule;
  rule.exactness = exactness;
  const int npts = (exactness + 2) / 2;
  std::vector<double> x, w;
  gauss_jacobi(npts, 0.0, 0.0, x, w);
  rule.points.resize(npts);
  rule.weights.resize(npts);
  for (int i = 0; i < npts; ++i) {
    rule.points[i] = 0.5 * (x[i] + 1.0);
    rule.weights[i] = 0.5 * w[i];
  }
  return rule;
}

}  // namespace ihdg
