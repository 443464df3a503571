#include "ihdg/reference_element.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/LU>

namespace ihdg {

LagrangeTriangle::LagrangeTriangle(int degree) : degree_(degree) {
  if (degree < 0 || degree > kMaxDegree + 1) {
    throw std::invalid_argument("unsupported triangle basis degree " + std::to_string(degree));
  }
  for (int total = 0; total <= degree; ++total) {
    for (int b = 0; b <= total; ++b) exponents_.push_back({total - b, b});
  }
  if (degree == 0) {
    nodes_.emplace_back(1.0 / 3.0, 1.0 / 3.0);
  } else {
    for (int j = 0; j <= degree; ++j) {
      for (int i = 0; i + j <= degree; ++i) {
        nodes_.emplace_back(static_cast<double>(i) / degree, static_cast<double>(j) / degree);
      }
    }
  }
  const auto n = static_cast<Eigen::Index>(nodes_.size());
  Eigen::MatrixXd vandermonde(n, n);
  for (Eigen::Index i = 0; i < n; ++i) vandermonde.row(i) = monomials(nodes_[i]).transpose();
  coefficients_ = vandermonde.fullPivLu().inverse();
}

Eigen::VectorXd LagrangeTriangle::monomials(const Point& xi) const {
  Eigen::VectorXd m(exponents_.size());
  for (std::size_t i = 0; i < exponents_.size(); ++i) {
    m[static_cast<Eigen::Index>(i)] =
        std::pow(xi.x(), exponents_[i][0]) * std::pow(xi.y(), exponents_[i][1]);
  }
  return m;
}

Eigen::MatrixX2d LagrangeTriangle::monomial_gradients(const Point& xi) const {
  Eigen::MatrixX2d g(exponents_.size(), 2);
  for (std::size_t i = 0; i < exponents_.size(); ++i) {
    const int a = exponents_[i][0];
    const int b = exponents_[i][1];
    const auto r = static_cast<Eigen::Index>(i);
    g(r, 0) = a == 0 ? 0.0 : a * std::pow(xi.x(), a - 1) * std::pow(xi.y(), b);
    g(r, 1) = b == 0 ? 0.0 : b * std::pow(xi.x(), a) * std::pow(xi.y(), b - 1);
  }
  return g;
}

Eigen::VectorXd LagrangeTriangle::values(const Point& xi) const {
  return coefficients_.transpose() * monomials(xi);
}

Eigen::MatrixX2d LagrangeTriangle::gradients(const Point& xi) const {
  return coefficients_.transpose() * monomial_gradients(xi);
}

LagrangeEdge::LagrangeEdge(int degree) : degree_(degree) {
  if (degree < 0 || degree > kMaxDegree + 1) {
    throw std::invalid_argument("unsupported edge basis degree " + std::to_string(degree));
  }
  if (degree == 0) {
    nodes_.push_back(0.5);
  } else {
    for (int i = 0; i <= degree; ++i) nodes_.push_back(static_cast<double>(i) / degree);
  }
}

Eigen::VectorXd LagrangeEdge::values(double s) const {
  Eigen::VectorXd v = Eigen::VectorXd::Ones(size());
  for (int i = 0; i <= degree_; ++i) {
    for (int j = 0; j <= degree_; ++j) {
      if (i != j) v[i] *= (s - nodes_[j]) / (nodes_[i] - nodes_[j]);
    }
  }
  return v;
}

Point ReferenceElement::face_point(int local_face, double s) {
  static const Point corners[3] = {Point(0.0, 0.0), Point(1.0, 0.0), Point(0.0, 1.0)};
  const Point& a = corners[(local_face + 1) % 3];
  const Point& b = corners[(local_face + 2) % 3];
  return a + s * (b - a);
}

ReferenceElement build_reference(int k) {
  if (k < 0 || k > kMaxDegree) {
    throw std::invalid_argument("unsupported polynomial degree k=" + std::to_string(k) +
                                " (supported: 0.." + std::to_string(kMaxDegree) + ")");
  }
  return ReferenceElement{k, LagrangeTriangle(k), LagrangeTriangle(k + 1), LagrangeEdge(k)};
}

AffineMap::AffineMap(const std::array<Point, 3>& vertices) : origin_(vertices[0]) {
  jacobian_.col(0) = vertices[1] - vertices[0];
  jacobian_.col(1) = vertices[2] - vertices[0];
  det_ = jacobian_.determinant();
  inverse_ = jacobian_.inverse();
}

}  // namespace ihdg
