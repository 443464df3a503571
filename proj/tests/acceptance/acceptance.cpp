// Runs acceptance criteria 1-8 and prints one PASS/FAIL line for each.
// Exit status is non-zero if any criterion fails.
//
//   acceptance            all criteria
//   acceptance 3 5        selected criteria

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/LU>

#include "fields.hpp"
#include "ihdg/analysis.hpp"
#include "ihdg/assembly.hpp"
#include "ihdg/projections.hpp"
#include "ihdg/solver.hpp"
#include "oracles.hpp"

using namespace ihdg;
using namespace oracle::fields;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

Eigen::VectorXd random_vector(Eigen::Index n, std::mt19937& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Eigen::VectorXd v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

std::shared_ptr<const Discretization> square(int n, int k, BoundaryCondition bc) {
  return std::make_shared<const Discretization>(generate_structured_square(n), k, bc);
}

// ---------------------------------------------------------------------------
// Criteria 1 and 2: convergence tables.

struct ReferenceRow {
  double q, u, ustar;
};

// Reference errors for levels n = 2, 4, 8, 16, 32.
const std::vector<ReferenceRow> kTableDegree0 = {
    {1.2889, 5.0344e-01, 4.5836e-01},     {7.0471e-01, 2.8491e-01, 2.5673e-01},
    {3.5473e-01, 1.5511e-01, 1.4105e-01}, {1.7648e-01, 8.0617e-02, 7.3725e-02},
    {8.7855e-02, 4.1025e-02, 3.7627e-02},
};
const std::vector<ReferenceRow> kTableDegree1 = {
    {3.7304e-01, 1.7028e-01, 3.0236e-02}, {9.9820e-02, 4.8288e-02, 3.9074e-03},
    {2.5307e-02, 1.2561e-02, 4.7940e-04}, {6.3422e-03, 3.1825e-03, 5.9047e-05},
    {1.5858e-03, 7.9966e-04, 7.3168e-06},
};

ConvergenceOptions table_options(int k, double final_time) {
  ConvergenceOptions o;
  o.k = k;
  o.final_time = final_time;
  if (k == 0) {
    o.levels = {2, 4, 8, 16, 32};
    o.scheme = TimeScheme::BackwardEuler;
    o.dt_rule = TimeStepRule::Linear;
  } else {
    o.levels = {2, 4, 8, 16};
    o.scheme = TimeScheme::CrankNicolson;
    o.dt_rule = TimeStepRule::Quadratic;
  }
  return o;
}

double worst_relative_deviation(const ConvergenceTable& t, const std::vector<ReferenceRow>& ref) {
  double worst = 0.0;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const auto& r = t.rows[i];
    worst = std::max({worst, std::abs(r.err_q / ref[i].q - 1.0), std::abs(r.err_u / ref[i].u - 1.0),
                      std::abs(r.err_ustar / ref[i].ustar - 1.0)});
  }
  return worst;
}

Outcome table_criterion(int k, const std::vector<ReferenceRow>& ref, const std::array<double, 3>& eoc,
                        double eoc_tol) {
  const ConvergenceTable t = run_convergence(allen_cahn(), table_options(k, 1.0));
  const double dev = worst_relative_deviation(t, ref);
  const auto& last = t.rows.back();
  const std::array<double, 3> got{last.rate_q, last.rate_u, last.rate_ustar};
  bool rates_ok = true;
  for (int i = 0; i < 3; ++i) rates_ok = rates_ok && std::abs(got[i] - eoc[i]) <= eoc_tol;
  if (k == 1) rates_ok = rates_ok && last.rate_ustar >= 2.8;
  const bool magnitudes_ok = dev <= 0.10;
  std::ostringstream d;
  const auto& r0 = t.rows.back();
  d << "n=" << r0.n << " errors " << fmt("%.4E", r0.err_q) << " " << fmt("%.4E", r0.err_u) << " "
    << fmt("%.4E", r0.err_ustar) << "; worst deviation from reference " << fmt("%.1f%%", 100 * dev)
    << (magnitudes_ok ? " (ok)" : " (>10%)") << "; finest EOC " << fmt("%.2f", got[0]) << "/"
    << fmt("%.2f", got[1]) << "/" << fmt("%.2f", got[2]) << (rates_ok ? " (ok)" : " (out of range)");
  return {magnitudes_ok && rates_ok, d.str()};
}

// Not a criterion: the same tables with amplitude sin(T) = 1.
std::string amplitude_diagnostic() {
  std::ostringstream d;
  for (int k : {0, 1}) {
    const ConvergenceTable t = run_convergence(allen_cahn(), table_options(k, kPi / 2));
    d << "k=" << k << " worst deviation " << fmt("%.1f%%", 100 * worst_relative_deviation(t, k ? kTableDegree1 : kTableDegree0))
      << (k == 0 ? "; " : "");
  }
  return d.str();
}

// ---------------------------------------------------------------------------
// Criterion 3: condensed vs monolithic, assembly vs brute force.

Outcome oracle_equivalence() {
  double worst_solve = 0.0, worst_matrix = 0.0;
  for (int n : {1, 2}) {
    for (int k : {0, 1}) {
      for (auto bc : {BoundaryCondition::Dirichlet, BoundaryCondition::Neumann}) {
        const auto disc = square(n, k, bc);
        const oracle::DenseSystem ref = oracle::brute_force_assembly(*disc, 1.0);
        const SystemMatrices sys = assemble_system(*disc, std::vector<double>(disc->mesh.num_elements(), 1.0));
        for (auto [a, b] : std::vector<std::pair<const SparseMatrix*, const Eigen::MatrixXd*>>{
                 {&sys.A1, &ref.A1}, {&sys.A2, &ref.A2}, {&sys.A3, &ref.A3}, {&sys.A4, &ref.A4},
                 {&sys.A5, &ref.A5}, {&sys.A6, &ref.A6}, {&sys.A7, &ref.A7}, {&sys.A8, &ref.A8},
                 {&sys.A9, &ref.A9}, {&sys.M, &ref.M}}) {
          if (a->rows() != b->rows() || a->cols() != b->cols()) return {false, "matrix shape mismatch"};
          if (b->size() > 0) worst_matrix = std::max(worst_matrix, (Eigen::MatrixXd(*a) - *b).lpNorm<Eigen::Infinity>());
        }
        worst_matrix = std::max({worst_matrix, (sys.b1 - ref.b1).lpNorm<Eigen::Infinity>(),
                                 (sys.b2 - ref.b2).lpNorm<Eigen::Infinity>()});
        if (bc == BoundaryCondition::Neumann) continue;

        // One backward-Euler step of the linear heat problem (F = 0).
        const double dt = 0.1;
        SolverConfig cfg;
        cfg.dt = dt;
        cfg.final_time = dt;
        // Polynomial source so both sides integrate it exactly.
        ProblemSpec heat = manufactured_heat();
        heat.source = {[](double, const Point& x) { return 1.0 + x.x() * x.y() - 0.5 * x.y() * x.y(); }};
        heat.initial = {[](const Point& x) { return std::cos(x.x()) + x.y(); }};
        heat.initial_projection = InitialProjection::L2;
        heat.exact.reset();
        HdgSolver solver(disc, heat, cfg);
        const State s0 = solver.initial_state();
        const State s1 = solver.step(s0, dt);

        const auto& l = disc->layout;
        const int n1 = l.n_flux(), n2 = l.n_scalar(), n4 = l.n_trace();
        Eigen::MatrixXd K = Eigen::MatrixXd::Zero(n1 + n2 + n4, n1 + n2 + n4);
        K.block(0, 0, n1, n1) = ref.A3;
        K.block(0, n1, n1, n2) = -ref.A4;
        K.block(0, n1 + n2, n1, n4) = ref.A5;
        K.block(n1, 0, n2, n1) = ref.A4.transpose();
        K.block(n1, n1, n2, n2) = ref.M / dt + ref.A6;
        K.block(n1, n1 + n2, n2, n4) = -ref.A7;
        K.block(n1 + n2, 0, n4, n1) = ref.A5.transpose();
        K.block(n1 + n2, n1, n4, n2) = ref.A7.transpose();
        K.block(n1 + n2, n1 + n2, n4, n4) = -ref.A8;
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n1 + n2 + n4);
        const auto& f = heat.source[0];
        for (int e = 0; e < static_cast<int>(disc->mesh.num_elements()); ++e) {
          const auto v = disc->mesh.element_vertices(e);
          const oracle::ElementBasis phi{oracle::Barycentric(v), oracle::lattice_basis(disc->ref.scalar.nodes(), k)};
          for (int i = 0; i < l.scalar_size(); ++i) {
            rhs[n1 + l.scalar(e, i)] =
                oracle::integrate_triangle(v, [&](const Point& x) { return f(dt, x) * phi.values(x)[i]; });
          }
        }
        rhs.segment(n1, n2) += ref.M * s0.beta / dt;
        const Eigen::VectorXd x = K.fullPivLu().solve(rhs);
        worst_solve = std::max(worst_solve, (solver.stack(s1) - x).norm() / x.norm());
      }
    }
  }
  const bool ok = worst_solve <= 1e-9 && worst_matrix <= 1e-11;
  return {ok, "condensed vs dense relative " + fmt("%.2e", worst_solve) + ", matrices vs brute force " +
                  fmt("%.2e", worst_matrix)};
}

// ---------------------------------------------------------------------------
// Criterion 4: Jacobian action vs central differences.

Outcome jacobian_check() {
  std::mt19937 rng(20240);
  double worst = 0.0, worst_blocks = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    SolverConfig cfg;
    cfg.dt = 0.05;
    cfg.scheme = trial % 2 ? TimeScheme::CrankNicolson : TimeScheme::BackwardEuler;
    HdgSolver s(square(2, 1, BoundaryCondition::Dirichlet), allen_cahn(), cfg);
    State prev = s.initial_state();
    prev.t = 0.1 * trial;
    const StepContext ctx = s.step_context(prev, cfg.dt);
    const Eigen::VectorXd x = random_vector(s.num_unknowns(), rng);
    const Eigen::VectorXd dir = random_vector(s.num_unknowns(), rng);
    const SparseMatrix J = s.jacobian_matrix(x, ctx);
    const Eigen::VectorXd action = J * dir;
    const double h = 1e-5;
    const Eigen::VectorXd fd = (s.residual(x + h * dir, ctx) - s.residual(x - h * dir, ctx)) / (2 * h);
    worst = std::max(worst, (action - fd).norm() / action.norm());
    const Eigen::VectorXd blocks = s.jacobian(x, ctx).to_sparse() * dir;
    worst_blocks = std::max(worst_blocks, (blocks - action).norm() / action.norm());
  }
  return {worst <= 1e-6 && worst_blocks <= 1e-12,
          "20 iterates, worst relative FD mismatch " + fmt("%.2e", worst) + ", element blocks vs global " +
              fmt("%.2e", worst_blocks)};
}

// ---------------------------------------------------------------------------
// Criterion 5: postprocessing.

Outcome postprocessing_check() {
  std::mt19937 rng(99);
  // (a) element-mean condition on random inputs.
  double worst_mean = 0.0;
  for (int k = 0; k <= 2; ++k) {
    const Discretization d(load_mesh("5 4\n0 0\n1 0\n1.2 0.9\n-0.1 1\n0.45 0.4\n0 1 4\n1 2 4\n2 3 4\n3 0 4\n"), k,
                           BoundaryCondition::Dirichlet);
    const SystemMatrices sys = assemble_system(d, std::vector<double>(4, 1.0));
    const PostprocessingBlocks pp = build_postprocessing_blocks(sys);
    for (int t = 0; t < 10; ++t) {
      const Eigen::VectorXd a = random_vector(d.layout.n_flux(), rng), b = random_vector(d.layout.n_scalar(), rng);
      const Eigen::VectorXd g = postprocess(pp, a, b);
      for (int e = 0; e < 4; ++e) worst_mean = std::max(worst_mean, postprocessing_residual(d, e, a, b, g).mean);
    }
  }
  // (b) u in P^(k+1) with exactly represented flux and projected scalar.
  double worst_exact = 0.0;
  for (int k = 0; k <= 2; ++k) {
    const Discretization d(generate_structured_square(3), k, BoundaryCondition::Dirichlet);
    const PostprocessingBlocks pp =
        build_postprocessing_blocks(assemble_system(d, std::vector<double>(d.mesh.num_elements(), 1.0)));
    const double cross = k > 0 ? 1.0 : 0.0;
    auto u = [k, cross](const Point& x) {
      return 0.5 + std::pow(x.x(), k + 1) - 1.5 * std::pow(x.y(), k + 1) + cross * x.x() * x.y();
    };
    auto q = [k, cross](const Point& x) {
      return Eigen::Vector2d(-((k + 1) * std::pow(x.x(), k) + cross * x.y()),
                             -(-1.5 * (k + 1) * std::pow(x.y(), k) + cross * x.x()));
    };
    Eigen::VectorXd alpha(d.layout.n_flux());
    for (int e = 0; e < static_cast<int>(d.mesh.num_elements()); ++e) {
      const AffineMap map(d.mesh.element_vertices(e));
      for (int i = 0; i < d.layout.scalar_size(); ++i) {
        const Eigen::Vector2d qi = q(map.to_physical(d.ref.scalar.nodes()[i]));
        alpha[d.layout.flux(e, 0, i)] = qi.x();
        alpha[d.layout.flux(e, 1, i)] = qi.y();
      }
    }
    const Eigen::VectorXd gamma = postprocess(pp, alpha, l2_project_element(u, d.mesh, k));
    worst_exact = std::max(worst_exact, (gamma - interpolate_Ih(u, d)).lpNorm<Eigen::Infinity>());
  }
  // (c) multiplier form vs orthogonal-complement form on random elements.
  double worst_complement = 0.0;
  std::normal_distribution<double> gauss;
  for (int c = 0; c < 200; ++c) {
    const int k = c % 3;
    const Discretization d(random_element(rng), k, BoundaryCondition::Dirichlet);
    const PostprocessingBlocks pp = build_postprocessing_blocks(assemble_system(d, {1.0}));
    Eigen::VectorXd a(d.layout.n_flux()), b(d.layout.n_scalar());
    for (auto& x : a) x = gauss(rng);
    for (auto& x : b) x = gauss(rng);
    const PostprocessingResidual r = postprocessing_residual(d, 0, a, b, postprocess(pp, a, b));
    worst_complement = std::max({worst_complement, r.gradient, r.mean});
  }
  const bool ok = worst_mean <= 1e-10 && worst_exact <= 1e-10 && worst_complement <= 1e-9;
  return {ok, "(a) mean " + fmt("%.1e", worst_mean) + " (b) P^(k+1) reproduction " + fmt("%.1e", worst_exact) +
                  " (c) complement residual " + fmt("%.1e", worst_complement)};
}

// ---------------------------------------------------------------------------
// Criterion 6: projections.

Outcome projection_check() {
  std::mt19937 rng(6);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  double worst_repro = 0.0, worst_moment = 0.0;
  std::vector<std::string> bad_orders;
  for (int k = 0; k <= 2; ++k) {
    const Discretization d(generate_structured_square(3), k, BoundaryCondition::Dirichlet);
    const std::vector<double> tau(d.mesh.num_elements(), 1.0);
    // Independent random polynomials of degree <= k for q_x, q_y and u.
    std::array<std::vector<std::tuple<int, int, double>>, 3> terms;
    for (auto& t : terms) {
      for (int a = 0; a <= k; ++a) {
        for (int b = 0; a + b <= k; ++b) t.emplace_back(a, b, coef(rng));
      }
    }
    auto poly = [&](int which, const Point& x) {
      double s = 0.0;
      for (auto [a, b, c] : terms[which]) s += c * monomial(x, a, b);
      return s;
    };
    const ScalarField u = [&](const Point& x) { return poly(2, x); };
    const VectorField q = [&](const Point& x) { return Eigen::Vector2d(poly(0, x), poly(1, x)); };
    const HdgProjection p = hdg_project(q, u, d, tau);
    const Eigen::VectorXd w = l2_project_element(u, d.mesh, k);
    for (int e = 0; e < static_cast<int>(d.mesh.num_elements()); ++e) {
      const auto v = d.mesh.element_vertices(e);
      for (int t = 0; t < 5; ++t) {
        double a = coef(rng) * 0.5 + 0.5, b = coef(rng) * 0.5 + 0.5;
        if (a + b > 1) a = 1 - a, b = 1 - b;
        const Point x = v[0] + a * (v[1] - v[0]) + b * (v[2] - v[0]);
        worst_repro = std::max({worst_repro, std::abs(eval_scalar(d, p.scalar, e, x) - u(x)),
                                (eval_flux(d, p.flux, e, x) - q(x)).norm(), std::abs(eval_scalar(d, w, e, x) - u(x))});
      }
    }
    auto us = [](const Point& x) { return std::exp(x.x()) * std::cos(2 * x.y()) + x.x() * x.y(); };
    auto qs = [](const Point& x) { return Eigen::Vector2d(std::sin(3 * x.y()), x.x() * x.x() * std::exp(-x.y())); };
    for (double t : {1.0, 2.7}) {
      const HdgProjection ps = hdg_project(qs, us, d, std::vector<double>(d.mesh.num_elements(), t));
      worst_moment = std::max(worst_moment, projection_residual(d, ps, qs, us, t));
    }

    const ScalarField sine = [](const Point& x) { return std::sin(kPi * x.x()) * std::sin(kPi * x.y()); };
    const VectorField grad = [](const Point& x) {
      return Eigen::Vector2d(-kPi * std::cos(kPi * x.x()) * std::sin(kPi * x.y()),
                             -kPi * std::sin(kPi * x.x()) * std::cos(kPi * x.y()));
    };
    std::vector<double> eu, eq, ei;
    for (int n : {4, 8, 16, 32}) {
      const Discretization dn(generate_structured_square(n), k, BoundaryCondition::Dirichlet);
      const HdgProjection pn = hdg_project(grad, sine, dn, std::vector<double>(dn.mesh.num_elements(), 1.0));
      const Eigen::VectorXd in = interpolate_Ih(sine, dn);
      eu.push_back(l2_diff(dn, [&](int e, const Point& x) { return eval_scalar(dn, pn.scalar, e, x) - sine(x); }));
      eq.push_back(l2_diff(dn, [&](int e, const Point& x) { return (eval_flux(dn, pn.flux, e, x) - grad(x)).norm(); }));
      ei.push_back(l2_diff(dn, [&](int e, const Point& x) { return eval_enriched(dn, in, e, x) - sine(x); }));
    }
    for (std::size_t i = 0; i + 1 < eu.size(); ++i) {
      const double ru = std::log2(eu[i] / eu[i + 1]), rq = std::log2(eq[i] / eq[i + 1]);
      const double ri = std::log2(ei[i] / ei[i + 1]);
      if (std::abs(ru - (k + 1)) > 0.2) bad_orders.push_back("Pi_W k=" + std::to_string(k) + fmt(" %.2f", ru));
      if (std::abs(rq - (k + 1)) > 0.2) bad_orders.push_back("Pi_V k=" + std::to_string(k) + fmt(" %.2f", rq));
      if (std::abs(ri - (k + 2)) > 0.2) bad_orders.push_back("I_h k=" + std::to_string(k) + fmt(" %.2f", ri));
    }
  }
  std::string orders = "orders within 0.2 for k=0..2 over n=4..32";
  if (!bad_orders.empty()) {
    orders = "orders off:";
    for (const auto& b : bad_orders) orders += " " + b;
  }
  const bool ok = worst_repro <= 1e-11 && worst_moment <= 1e-10 && bad_orders.empty();
  return {ok, "reproduction " + fmt("%.1e", worst_repro) + ", moments " + fmt("%.1e", worst_moment) + ", " + orders};
}

// ---------------------------------------------------------------------------
// Criterion 7: assemble once.

Outcome assemble_once() {
  assembly_counters().reset();
  SolverConfig cfg;
  cfg.dt = 0.01;
  cfg.final_time = 1.0;
  cfg.scheme = TimeScheme::CrankNicolson;
  HdgSolver s(square(4, 1, BoundaryCondition::Dirichlet), allen_cahn(), cfg);
  const RunResult r = s.run();
  const long sys = assembly_counters().system.load(), pp = assembly_counters().postprocessing.load();
  const bool ok = r.steps.size() == 100 && sys == 1 && pp == 1;
  return {ok, std::to_string(r.steps.size()) + " steps, system assembled " + std::to_string(sys) +
                  "x, postprocessing blocks built " + std::to_string(pp) + "x"};
}

// ---------------------------------------------------------------------------
// Criterion 8: Schnakenberg.

Outcome schnakenberg_check() {
  // (a) the homogeneous equilibrium is preserved.
  SolverConfig cfg;
  cfg.dt = 0.001;
  cfg.final_time = 1.0;
  cfg.scheme = TimeScheme::CrankNicolson;
  const SchnakenbergParameters prm;
  const double ca = prm.a + prm.b, ci = prm.b / (ca * ca);
  double drift = 0.0;
  {
    HdgSolver s(square(8, 1, BoundaryCondition::Neumann), schnakenberg(false), cfg);
    const int n2 = s.discretization().layout.n_scalar(), n3 = s.discretization().layout.n_enriched();
    s.run([&](const State& st, const StepLog*) {
      drift = std::max({drift, (st.beta.head(n2).array() - ca).abs().maxCoeff(),
                        (st.beta.tail(n2).array() - ci).abs().maxCoeff(),
                        (st.gamma.head(n3).array() - ca).abs().maxCoeff(),
                        (st.gamma.tail(n3).array() - ci).abs().maxCoeff()});
    });
  }
  // (b) perturbed start on the 2048-element square up to T = 2.
  cfg.final_time = 2.0;
  HdgSolver s(square(32, 1, BoundaryCondition::Neumann), schnakenberg(true), cfg);
  const int n2 = s.discretization().layout.n_scalar();
  double lo = 1e300, hi = -1e300, deviation = 0.0;
  bool finite = true;
  s.run([&](const State& st, const StepLog*) {
    const auto a = st.beta.head(n2).array();
    finite = finite && st.beta.allFinite() && st.alpha.allFinite();
    lo = std::min(lo, a.minCoeff());
    hi = std::max(hi, a.maxCoeff());
    deviation = std::max(deviation, (a - ca).abs().maxCoeff());
  });
  const bool ok_a = drift <= 1e-6;
  const bool ok_b = finite && lo > 0.0 && hi < 10.0 && deviation > 0.05;
  return {ok_a && ok_b, "(a) max drift from equilibrium " + fmt("%.1e", drift) + " (b) C_a in [" + fmt("%.4f", lo) +
                            ", " + fmt("%.4f", hi) + "], max|C_a - 0.9| = " + fmt("%.4f", deviation)};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"table k=0", [] { return table_criterion(0, kTableDegree0, {1.00, 0.97, 0.97}, 0.10); }},
      {"table k=1", [] { return table_criterion(1, kTableDegree1, {2.00, 1.98, 3.02}, 0.15); }},
      {"oracle equivalence", oracle_equivalence},
      {"jacobian", jacobian_check},
      {"postprocessing", postprocessing_check},
      {"projections", projection_check},
      {"assemble once", assemble_once},
      {"schnakenberg", schnakenberg_check},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!selected.empty() && !selected.count(id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %d (%s): %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", id, criteria[i].first.c_str(),
                o.detail.c_str(), secs);
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
    if (id == 2) {
      std::printf("INFO tables at T=pi/2 (amplitude sin T = 1), not a criterion: %s\n", amplitude_diagnostic().c_str());
      std::fflush(stdout);
    }
  }
  return failures == 0 ? 0 : 1;
}
