#include "ihdg/problems.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ihdg {

namespace {

constexpr double kPi = std::numbers::pi;

double bump(const Point& x) { return std::sin(kPi * x.x()) * std::sin(kPi * x.y()); }

ExactSolution sine_solution() {
  ExactSolution ex;
  ex.u.emplace_back([](double t, const Point& x) { return std::sin(t) * bump(x); });
  ex.q.emplace_back([](double t, const Point& x) {
    const double s = std::sin(t);
    return Eigen::Vector2d(-s * kPi * std::cos(kPi * x.x()) * std::sin(kPi * x.y()),
                           -s * kPi * std::sin(kPi * x.x()) * std::cos(kPi * x.y()));
  });
  return ex;
}

}  // namespace

Reaction scalar_reaction(std::function<double(double)> F, std::function<double(double)> dF) {
  Reaction r;
  r.value = [F = std::move(F)](std::span<const double> u, std::span<double> out) { out[0] = F(u[0]); };
  r.jacobian = [dF = std::move(dF)](std::span<const double> u, std::span<double> out) {
    out[0] = dF(u[0]);
  };
  return r;
}

ProblemSpec allen_cahn() {
  ProblemSpec p;
  p.name = "allen_cahn";
  p.field_names = {"u"};
  p.diffusion = {1.0};
  p.bc = BoundaryCondition::Dirichlet;
  p.reaction = scalar_reaction([](double u) { return u * u * u - u; },
                               [](double u) { return 3.0 * u * u - 1.0; });
  p.source.emplace_back([](double t, const Point& x) {
    const double s = bump(x);
    const double u = std::sin(t) * s;
    return std::cos(t) * s + 2.0 * kPi * kPi * u + u * u * u - u;
  });
  p.initial.emplace_back([](const Point&) { return 0.0; });
  p.initial_projection = InitialProjection::Hdg;
  p.exact = sine_solution();
  return p;
}

ProblemSpec manufactured_heat() {
  ProblemSpec p;
  p.name = "heat";
  p.field_names = {"u"};
  p.diffusion = {1.0};
  p.bc = BoundaryCondition::Dirichlet;
  p.reaction = scalar_reaction([](double) { return 0.0; }, [](double) { return 0.0; });
  p.source.emplace_back([](double t, const Point& x) {
    const double s = bump(x);
    return std::cos(t) * s + 2.0 * kPi * kPi * std::sin(t) * s;
  });
  p.initial.emplace_back([](const Point&) { return 0.0; });
  p.initial_projection = InitialProjection::Hdg;
  p.exact = sine_solution();
  return p;
}

ProblemSpec schnakenberg(bool perturbed, const SchnakenbergParameters& prm) {
  ProblemSpec p;
  p.name = perturbed ? "schnakenberg" : "schnakenberg_homogeneous";
  p.field_names = {"Ca", "Ci"};
  p.diffusion = {prm.d1, prm.d2};
  p.bc = BoundaryCondition::Neumann;
  // u_t - D Lap(u) + F(u) = 0, so the reaction rates enter with a minus sign.
  p.reaction.value = [prm](std::span<const double> u, std::span<double> F) {
    const double ca = u[0];
    const double ci = u[1];
    F[0] = -prm.kappa * (prm.a - ca + ca * ca * ci);
    F[1] = -prm.kappa * (prm.b - ca * ca * ci);
  };
  p.reaction.jacobian = [prm](std::span<const double> u, std::span<double> dF) {
    const double ca = u[0];
    const double ci = u[1];
    dF[0] = -prm.kappa * (-1.0 + 2.0 * ca * ci);
    dF[1] = -prm.kappa * ca * ca;
    dF[2] = prm.kappa * 2.0 * ca * ci;
    dF[3] = prm.kappa * ca * ca;
  };
  const double ca0 = prm.a + prm.b;
  const double ci0 = prm.b / (ca0 * ca0);
  if (perturbed) {
    p.initial.emplace_back([ca0](const Point& x) {
      const double dx = x.x() - 1.0 / 3.0;
      const double dy = x.y() - 0.5;
      return ca0 + 1e-3 * std::exp(-100.0 * (dx * dx + dy * dy));
    });
  } else {
    p.initial.emplace_back([ca0](const Point&) { return ca0; });
  }
  p.initial.emplace_back([ci0](const Point&) { return ci0; });
  p.initial_projection = InitialProjection::L2;
  return p;
}

std::vector<std::string> problem_names() {
  return {"allen_cahn", "heat", "schnakenberg", "schnakenberg_homogeneous"};
}

ProblemSpec make_problem(const std::string& name) {
  if (name == "allen_cahn") return allen_cahn();
  if (name == "heat") return manufactured_heat();
  if (name == "schnakenberg") return schnakenberg(true);
  if (name == "schnakenberg_homogeneous") return schnakenberg(false);
  throw std::invalid_argument("unknown problem '" + name + "'");
}

}  // namespace ihdg
