#include "ihdg/projections.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include <Eigen/LU>

namespace ihdg {

namespace {

// Data here is arbitrary smooth input, so the rules carry a wider margin
// than the assembled (polynomial) integrals need.
int projection_exactness(int degree) { return std::min(kMaxQuadratureExactness, 2 * degree + 12); }

}  // namespace

HdgProjection hdg_project(const VectorField& q, const ScalarField& u, const Discretization& disc,
                          const std::vector<double>& tau) {
  const Mesh& mesh = disc.mesh;
  const int k = disc.k();
  const auto& basis = disc.ref.scalar;
  const int nk = basis.size();
  const int nf = k + 1;
  if (tau.size() != mesh.num_elements()) {
    throw std::invalid_argument("hdg_project: tau must have one value per element");
  }
  // Test space P^(k-1) is empty for k = 0.
  const int nt = triangle_dim(k - 1);
  const std::optional<LagrangeTriangle> test =
      k > 0 ? std::optional<LagrangeTriangle>(LagrangeTriangle(k - 1)) : std::nullopt;
  const auto vol = triangle_quadrature(projection_exactness(k));
  const auto edge = edge_quadrature(projection_exactness(k));

  HdgProjection out;
  out.flux = Eigen::VectorXd::Zero(disc.layout.n_flux());
  out.scalar = Eigen::VectorXd::Zero(disc.layout.n_scalar());

  const int n = 3 * nk;
  for (std::size_t e = 0; e < mesh.num_elements(); ++e) {
    if (tau[e] < 0.0) {
      throw SingularLocalSystemError(static_cast<int>(e), "hdg_project: negative stabilization");
    }
    const AffineMap map(mesh.element_vertices(e));
    const double jac = std::abs(map.det());
    Eigen::MatrixXd lhs = Eigen::MatrixXd::Zero(n, n);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);

    // Unknown ordering: [q_x (nk), q_y (nk), u (nk)].
    if (test) {
      for (std::size_t p = 0; p < vol.size(); ++p) {
        const Eigen::VectorXd phi = basis.values(vol.points[p]);
        const Eigen::VectorXd r = test->values(vol.points[p]);
        const Point x = map.to_physical(vol.points[p]);
        const double w = vol.weights[p] * jac;
        const Eigen::Vector2d qv = q(x);
        const double uv = u(x);
        for (int c = 0; c < 2; ++c) {
          lhs.block(c * nt, c * nk, nt, nk) += w * r * phi.transpose();
          rhs.segment(c * nt, nt) += w * qv[c] * r;
        }
        lhs.block(2 * nt, 2 * nk, nt, nk) += w * r * phi.transpose();
        rhs.segment(2 * nt, nt) += w * uv * r;
      }
    }
    for (int i = 0; i < 3; ++i) {
      const Point normal = mesh.outward_normal(e, i);
      const double len = mesh.faces()[mesh.element_faces(e)[i]].length;
      const int row0 = 3 * nt + i * nf;
      for (std::size_t p = 0; p < edge.size(); ++p) {
        const Point xi = ReferenceElement::face_point(i, edge.points[p]);
        const Eigen::VectorXd phi = basis.values(xi);
        const Eigen::VectorXd mu = disc.ref.trace.values(edge.points[p]);
        const Point x = map.to_physical(xi);
        const double w = edge.weights[p] * len;
        for (int c = 0; c < 2; ++c) {
          lhs.block(row0, c * nk, nf, nk) += w * normal[c] * mu * phi.transpose();
        }
        lhs.block(row0, 2 * nk, nf, nk) += w * tau[e] * mu * phi.transpose();
        rhs.segment(row0, nf) += w * (q(x).dot(normal) + tau[e] * u(x)) * mu;
      }
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(lhs);
    if (!lu.isInvertible()) {
      throw SingularLocalSystemError(static_cast<int>(e), "hdg_project: singular local system");
    }
    const Eigen::VectorXd sol = lu.solve(rhs);
    const int ei = static_cast<int>(e);
    for (int a = 0; a < nk; ++a) {
      out.flux[disc.layout.flux(ei, 0, a)] = sol[a];
      out.flux[disc.layout.flux(ei, 1, a)] = sol[nk + a];
      out.scalar[disc.layout.scalar(ei, a)] = sol[2 * nk + a];
    }
  }
  return out;
}

Eigen::VectorXd l2_project_element(const ScalarField& f, const Mesh& mesh, int degree) {
  const LagrangeTriangle basis(degree);
  const int nb = basis.size();
  const auto vol = triangle_quadrature(projection_exactness(degree));
  // The reference mass matrix is shared; the Jacobian cancels.
  Eigen::MatrixXd mass = Eigen::MatrixXd::Zero(nb, nb);
  std::vector<Eigen::VectorXd> phi(vol.size());
  for (std::size_t p = 0; p < vol.size(); ++p) {
    phi[p] = basis.values(vol.points[p]);
    mass += vol.weights[p] * phi[p] * phi[p].transpose();
  }
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(mass);
  Eigen::VectorXd out(static_cast<Eigen::Index>(nb * mesh.num_elements()));
  for (std::size_t e = 0; e < mesh.num_elements(); ++e) {
    const AffineMap map(mesh.element_vertices(e));
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(nb);
    for (std::size_t p = 0; p < vol.size(); ++p) {
      rhs += vol.weights[p] * f(map.to_physical(vol.points[p])) * phi[p];
    }
    out.segment(static_cast<Eigen::Index>(e) * nb, nb) = lu.solve(rhs);
  }
  return out;
}

Eigen::VectorXd l2_project_face(const ScalarField& f, const Mesh& mesh, int k) {
  const LagrangeEdge basis(k);
  const int nb = basis.size();
  const auto rule = edge_quadrature(projection_exactness(k));
  Eigen::MatrixXd mass = Eigen::MatrixXd::Zero(nb, nb);
  std::vector<Eigen::VectorXd> mu(rule.size());
  for (std::size_t p = 0; p < rule.size(); ++p) {
    mu[p] = basis.values(rule.points[p]);
    mass += rule.weights[p] * mu[p] * mu[p].transpose();
  }
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(mass);
  Eigen::VectorXd out(static_cast<Eigen::Index>(nb * mesh.num_faces()));
  for (std::size_t fi = 0; fi < mesh.num_faces(); ++fi) {
    const Face& face = mesh.faces()[fi];
    const Point& a = mesh.vertices()[face.vertices[0]];
    const Point& b = mesh.vertices()[face.vertices[1]];
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(nb);
    for (std::size_t p = 0; p < rule.size(); ++p) {
      rhs += rule.weights[p] * f(a + rule.points[p] * (b - a)) * mu[p];
    }
    out.segment(static_cast<Eigen::Index>(fi) * nb, nb) = lu.solve(rhs);
  }
  return out;
}

Eigen::VectorXd interpolate_Ih(const ScalarField& f, const Discretization& disc) {
  const auto& nodes = disc.ref.enriched.nodes();
  Eigen::VectorXd out(disc.layout.n_enriched());
  for (std::size_t e = 0; e < disc.mesh.num_elements(); ++e) {
    const AffineMap map(disc.mesh.element_vertices(e));
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      out[disc.layout.enriched(static_cast<int>(e), static_cast<int>(i))] = f(map.to_physical(nodes[i]));
    }
  }
  return out;
}

}  // namespace ihdg
