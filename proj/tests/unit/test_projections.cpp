#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "ihdg/projections.hpp"
#include "fields.hpp"
#include "oracles.hpp"

using namespace ihdg;
using namespace oracle::fields;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> unit_tau(const Discretization& d) { return std::vector<double>(d.mesh.num_elements(), 1.0); }

const ScalarField kSine = [](const Point& x) { return std::sin(kPi * x.x()) * std::sin(kPi * x.y()); };
const VectorField kSineFlux = [](const Point& x) {
  return Eigen::Vector2d(-kPi * std::cos(kPi * x.x()) * std::sin(kPi * x.y()),
                         -kPi * std::sin(kPi * x.x()) * std::cos(kPi * x.y()));
};

}  // namespace

TEST(HdgProjection, ReproducesPolynomials) {
  for (int k = 0; k <= 3; ++k) {
    SCOPED_TRACE(k);
    const Discretization d(generate_structured_square(2), k, BoundaryCondition::Dirichlet);
    // u of degree k with q = -grad u (degree k - 1).
    auto u = [k](const Point& x) { return 0.3 + std::pow(x.x(), k) - 0.7 * std::pow(x.y(), k) + (k >= 2 ? x.x() * x.y() : 0.0); };
    auto q = [k](const Point& x) {
      const double dx = k >= 1 ? k * std::pow(x.x(), k - 1) + (k >= 2 ? x.y() : 0.0) : 0.0;
      const double dy = k >= 1 ? -0.7 * k * std::pow(x.y(), k - 1) + (k >= 2 ? x.x() : 0.0) : 0.0;
      return Eigen::Vector2d(-dx, -dy);
    };
    const HdgProjection p = hdg_project(q, u, d, unit_tau(d));
    for (int e = 0; e < 8; ++e) {
      const auto v = d.mesh.element_vertices(e);
      const Point x = (0.2 * v[0] + 0.5 * v[1] + 0.3 * v[2]);
      EXPECT_NEAR(eval_scalar(d, p.scalar, e, x), u(x), 1e-11);
      EXPECT_LT((eval_flux(d, p.flux, e, x) - q(x)).norm(), 1e-11);
    }
  }
}

TEST(HdgProjection, DefiningConditionsOnSmoothData) {
  auto u = [](const Point& x) { return std::exp(x.x()) * std::cos(2 * x.y()); };
  auto q = [](const Point& x) { return Eigen::Vector2d(std::sin(x.y()), x.x() * x.x() * std::exp(-x.y())); };
  for (int k = 0; k <= 2; ++k) {
    const Discretization d(generate_structured_square(3), k, BoundaryCondition::Dirichlet);
    for (double tau : {1.0, 3.5}) {
      const HdgProjection p = hdg_project(q, u, d, std::vector<double>(d.mesh.num_elements(), tau));
      EXPECT_LT(projection_residual(d, p, q, u, tau), 1e-10) << "k=" << k << " tau=" << tau;
    }
  }
}

TEST(HdgProjection, SingleElementDegreeZero) {
  // Two flux unknowns and one scalar unknown fixed by three face moments.
  const Discretization d(load_mesh("3 1\n0 0\n1 0\n0 1\n0 1 2\n"), 0, BoundaryCondition::Dirichlet);
  EXPECT_EQ(d.layout.n_flux() + d.layout.n_scalar(), 3);
  auto u = [](const Point& x) { return x.x() * x.x() + std::sin(x.y()); };
  auto q = [](const Point& x) { return Eigen::Vector2d(x.y(), -x.x() * x.y()); };
  const HdgProjection p = hdg_project(q, u, d, {1.0});
  EXPECT_LT(projection_residual(d, p, q, u, 1.0), 1e-12);
}

TEST(HdgProjection, Linear) {
  const Discretization d(generate_structured_square(3), 1, BoundaryCondition::Dirichlet);
  auto u2 = [](const Point& x) { return std::cos(x.x() + 2 * x.y()); };
  auto q2 = [](const Point& x) { return Eigen::Vector2d(x.x() * x.y(), std::exp(x.x())); };
  const double a = 1.7, b = -0.4;
  const auto p1 = hdg_project(kSineFlux, kSine, d, unit_tau(d));
  const auto p2 = hdg_project(q2, u2, d, unit_tau(d));
  const auto pc = hdg_project([&](const Point& x) { return Eigen::Vector2d(a * kSineFlux(x) + b * q2(x)); },
                              [&](const Point& x) { return a * kSine(x) + b * u2(x); }, d, unit_tau(d));
  EXPECT_LT((pc.flux - a * p1.flux - b * p2.flux).lpNorm<Eigen::Infinity>(), 1e-11);
  EXPECT_LT((pc.scalar - a * p1.scalar - b * p2.scalar).lpNorm<Eigen::Infinity>(), 1e-11);
}

TEST(HdgProjection, CommutesWithTimeDerivative) {
  const Discretization d(generate_structured_square(2), 1, BoundaryCondition::Dirichlet);
  auto g = [](double t) { return std::sin(3 * t) + t * t; };
  auto dg = [](double t) { return 3 * std::cos(3 * t) + 2 * t; };
  auto at = [&](double t) {
    return hdg_project([&](const Point& x) { return Eigen::Vector2d(g(t) * kSineFlux(x)); },
                       [&](const Point& x) { return g(t) * kSine(x); }, d, unit_tau(d));
  };
  const double t = 0.4, h = 1e-4;
  const Eigen::VectorXd fd = (at(t + h).scalar - at(t - h).scalar) / (2 * h);
  const auto pt = hdg_project([&](const Point& x) { return Eigen::Vector2d(dg(t) * kSineFlux(x)); },
                              [&](const Point& x) { return dg(t) * kSine(x); }, d, unit_tau(d));
  // Central differences of an exactly linear-in-g map: only rounding and O(h^2 g''') remain.
  EXPECT_LT((fd - pt.scalar).lpNorm<Eigen::Infinity>(), 1e-7);
  // The map u -> Pi_W u is linear, so the commuting property is exact for g(t) p(x).
  const auto p0 = hdg_project(kSineFlux, kSine, d, unit_tau(d));
  EXPECT_LT((pt.scalar - dg(t) * p0.scalar).lpNorm<Eigen::Infinity>(), 1e-11);
}

TEST(HdgProjection, ZeroTauIsSingularWithElementIndex) {
  const Discretization d(generate_structured_square(1), 1, BoundaryCondition::Dirichlet);
  try {
    hdg_project(kSineFlux, kSine, d, {1.0, 0.0});
    FAIL() << "expected SingularLocalSystemError";
  } catch (const SingularLocalSystemError& e) {
    EXPECT_EQ(e.element(), 1);
  }
  EXPECT_THROW(hdg_project(kSineFlux, kSine, d, {1.0, -1.0}), SingularLocalSystemError);
}

TEST(HdgProjection, ConvergenceOrders) {
  for (int k = 0; k <= 2; ++k) {
    std::vector<double> eu, eq;
    for (int n : {4, 8, 16}) {
      const Discretization d(generate_structured_square(n), k, BoundaryCondition::Dirichlet);
      const auto p = hdg_project(kSineFlux, kSine, d, unit_tau(d));
      eu.push_back(l2_diff(d, [&](int e, const Point& x) { return eval_scalar(d, p.scalar, e, x) - kSine(x); }));
      eq.push_back(std::sqrt(std::pow(l2_diff(d, [&](int e, const Point& x) {
                                        return eval_flux(d, p.flux, e, x).x() - kSineFlux(x).x();
                                      }), 2) +
                             std::pow(l2_diff(d, [&](int e, const Point& x) {
                                        return eval_flux(d, p.flux, e, x).y() - kSineFlux(x).y();
                                      }), 2)));
    }
    for (int i = 0; i + 1 < 3; ++i) {
      EXPECT_NEAR(std::log2(eu[i] / eu[i + 1]), k + 1, 0.2) << "k=" << k;
      EXPECT_NEAR(std::log2(eq[i] / eq[i + 1]), k + 1, 0.2) << "k=" << k;
    }
  }
}

TEST(L2Projection, NormalEquationsOnReferenceTriangle) {
  const Mesh m = load_mesh("3 1\n0 0\n1 0\n0 1\n0 1 2\n");
  const Eigen::VectorXd c = l2_project_element([](const Point& x) { return x.x() * x.x(); }, m, 1);
  // Best fit a + b x + c y of x^2 from the moment matrix of {1, x, y}.
  Eigen::Matrix3d G;
  G << 1.0 / 2, 1.0 / 6, 1.0 / 6, 1.0 / 6, 1.0 / 12, 1.0 / 24, 1.0 / 6, 1.0 / 24, 1.0 / 12;
  const Eigen::Vector3d rhs(1.0 / 12, 1.0 / 20, 1.0 / 60);
  const Eigen::Vector3d abc = G.fullPivLu().solve(rhs);
  const LagrangeTriangle b(1);
  for (int i = 0; i < 3; ++i) {
    const Point& x = b.nodes()[i];
    EXPECT_NEAR(c[i], abc[0] + abc[1] * x.x() + abc[2] * x.y(), 1e-13);
  }
}

TEST(L2Projection, ReproductionAndConstants) {
  const Mesh m = generate_structured_square(3);
  for (int l = 0; l <= 3; ++l) {
    const Eigen::VectorXd one = l2_project_element([](const Point&) { return 1.0; }, m, l);
    EXPECT_LT((one.array() - 1.0).abs().maxCoeff(), 1e-12);
    auto p = [l](const Point& x) { return std::pow(x.x() - 0.3, l) + std::pow(x.y(), l > 0 ? l - 1 : 0); };
    const Eigen::VectorXd c = l2_project_element(p, m, l);
    const LagrangeTriangle b(l);
    for (int e = 0; e < static_cast<int>(m.num_elements()); ++e) {
      const AffineMap map(m.element_vertices(e));
      for (int i = 0; i < b.size(); ++i) {
        EXPECT_NEAR(c[e * b.size() + i], p(map.to_physical(b.nodes()[i])), 1e-12);
      }
    }
  }
}

TEST(L2Projection, GalerkinOrthogonality) {
  const Mesh m = generate_structured_square(4);
  auto f = [](const Point& x) { return std::exp(x.x()) * std::cos(x.y()); };
  for (int l = 0; l <= 2; ++l) {
    const Eigen::VectorXd c = l2_project_element(f, m, l);
    const LagrangeTriangle b(l);
    for (int e = 0; e < static_cast<int>(m.num_elements()); ++e) {
      const AffineMap map(m.element_vertices(e));
      for (int a = 0; a <= l; ++a) {
        for (int bb = 0; a + bb <= l; ++bb) {
          const double r = oracle::integrate_triangle(m.element_vertices(e), [&](const Point& x) {
            const double ph = c.segment(e * b.size(), b.size()).dot(b.values(map.to_reference(x)));
            return (f(x) - ph) * monomial(x, a, bb);
          });
          EXPECT_LT(std::abs(r), 1e-10);
        }
      }
    }
  }
}

TEST(L2Projection, FaceOrthogonality) {
  const Mesh m = generate_structured_square(3);
  auto f = [](const Point& x) { return std::sin(2 * x.x() + x.y()); };
  for (int k = 0; k <= 2; ++k) {
    const Eigen::VectorXd c = l2_project_face(f, m, k);
    ASSERT_EQ(c.size(), static_cast<Eigen::Index>((k + 1) * m.num_faces()));
    for (int fi = 0; fi < static_cast<int>(m.num_faces()); ++fi) {
      const auto& face = m.faces()[fi];
      const Point a = m.vertices()[face.vertices[0]], b = m.vertices()[face.vertices[1]];
      for (int j = 0; j <= k; ++j) {
        const double r = oracle::integrate_segment(a, b, [&](const Point& x, double s) {
          const double ph = c.segment(fi * (k + 1), k + 1).dot(oracle::edge_basis(k, s));
          return (f(x) - ph) * oracle::edge_basis(k, s)[j];
        });
        EXPECT_LT(std::abs(r), 1e-10);
      }
    }
  }
}

TEST(Interpolation, NodalValuesAndReproduction) {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k <= 2; ++k) {
    const Discretization d(generate_structured_square(2), k, BoundaryCondition::Dirichlet);
    // Degree k + 1 polynomial.
    const double cross = k > 0 ? 1.0 : 0.0;
    auto p = [k, cross](const Point& x) {
      return 1.0 + std::pow(x.x(), k + 1) - 2.0 * std::pow(x.y(), k + 1) + cross * x.x() * x.y();
    };
    const Eigen::VectorXd c = interpolate_Ih(p, d);
    for (int t = 0; t < 50; ++t) {
      const int e = static_cast<int>(u(rng) * 8) % 8;
      double a = u(rng), b = u(rng);
      if (a + b > 1) a = 1 - a, b = 1 - b;
      const Point x = AffineMap(d.mesh.element_vertices(e)).to_physical(Point(a, b));
      EXPECT_NEAR(eval_enriched(d, c, e, x), p(x), 1e-12);
    }
  }
}

TEST(Interpolation, DiscontinuousDataIsElementwise) {
  const Discretization d(generate_structured_square(2), 1, BoundaryCondition::Dirichlet);
  // f jumps across x = 1/2; each element is interpolated from its own side.
  for (std::size_t e = 0; e < d.mesh.num_elements(); ++e) {
    const auto v = d.mesh.element_vertices(e);
    const Point c = (v[0] + v[1] + v[2]) / 3.0;
    auto f = [&](const Point& x) { return (c.x() > 0.5 ? 10.0 : 0.0) + x.x(); };
    const Eigen::VectorXd coeff = interpolate_Ih(f, d);
    const AffineMap map(v);
    for (int i = 0; i < d.ref.enriched.size(); ++i) {
      const Point x = map.to_physical(d.ref.enriched.nodes()[i]);
      EXPECT_DOUBLE_EQ(coeff[d.layout.enriched(static_cast<int>(e), i)], f(x));
    }
  }
}

TEST(Interpolation, ConvergesAtOrderKPlusTwo) {
  for (int k = 0; k <= 2; ++k) {
    std::vector<double> err;
    for (int n : {4, 8, 16}) {
      const Discretization d(generate_structured_square(n), k, BoundaryCondition::Dirichlet);
      const Eigen::VectorXd c = interpolate_Ih(kSine, d);
      err.push_back(l2_diff(d, [&](int e, const Point& x) { return eval_enriched(d, c, e, x) - kSine(x); }));
    }
    for (int i = 0; i + 1 < 3; ++i) EXPECT_NEAR(std::log2(err[i] / err[i + 1]), k + 2, 0.2) << "k=" << k;
  }
}
