#include "ihdg/analysis.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <memory>
#include <ostream>
#include <stdexcept>

namespace ihdg {

namespace {

std::string level_label(int n) {
  if (n > 0 && (n & (n - 1)) == 0) {
    int p = 0;
    while ((1 << p) < n) ++p;
    return "2^-" + std::to_string(p);
  }
  return "1/" + std::to_string(n);
}

std::string format_error(double e) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4E", e);
  return buf;
}

std::string format_rate(double r) {
  if (std::isnan(r)) return "";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", r);
  return buf;
}

}  // namespace

double l2_error(const Discretization& disc, ScalarSpace space, const Eigen::VectorXd& coeffs,
                const ScalarField& exact) {
  const LagrangeTriangle& basis = space == ScalarSpace::W ? disc.ref.scalar : disc.ref.enriched;
  const int nb = basis.size();
  const auto rule = triangle_quadrature(data_exactness(disc.k()));
  std::vector<Eigen::VectorXd> phi;
  for (const auto& p : rule.points) phi.push_back(basis.values(p));
  double sum = 0.0;
  for (std::size_t e = 0; e < disc.mesh.num_elements(); ++e) {
    const AffineMap map(disc.mesh.element_vertices(e));
    const auto local = coeffs.segment(static_cast<Eigen::Index>(e) * nb, nb);
    double elem = 0.0;
    for (std::size_t p = 0; p < rule.size(); ++p) {
      const double diff = exact(map.to_physical(rule.points[p])) - local.dot(phi[p]);
      elem += rule.weights[p] * diff * diff;
    }
    sum += elem * std::abs(map.det());
  }
  return std::sqrt(sum);
}

double l2_error_flux(const Discretization& disc, const Eigen::VectorXd& coeffs, const VectorField& exact) {
  const auto& basis = disc.ref.scalar;
  const int nk = basis.size();
  const auto rule = triangle_quadrature(data_exactness(disc.k()));
  std::vector<Eigen::VectorXd> phi;
  for (const auto& p : rule.points) phi.push_back(basis.values(p));
  double sum = 0.0;
  for (std::size_t e = 0; e < disc.mesh.num_elements(); ++e) {
    const AffineMap map(disc.mesh.element_vertices(e));
    const int ei = static_cast<int>(e);
    const auto qx = coeffs.segment(disc.layout.flux(ei, 0, 0), nk);
    const auto qy = coeffs.segment(disc.layout.flux(ei, 1, 0), nk);
    double elem = 0.0;
    for (std::size_t p = 0; p < rule.size(); ++p) {
      const Eigen::Vector2d q = exact(map.to_physical(rule.points[p]));
      const double dx = q.x() - qx.dot(phi[p]);
      const double dy = q.y() - qy.dot(phi[p]);
      elem += rule.weights[p] * (dx * dx + dy * dy);
    }
    sum += elem * std::abs(map.det());
  }
  return std::sqrt(sum);
}

double convergence_rate(double err_coarse, double err_fine, int n_coarse, int n_fine) {
  if (!(err_coarse > 1e-12) || !(err_fine > 1e-12)) return std::numeric_limits<double>::quiet_NaN();
  return std::log(err_coarse / err_fine) / std::log(static_cast<double>(n_fine) / n_coarse);
}

ConvergenceTable run_convergence(const ProblemSpec& problem, const ConvergenceOptions& options,
                                 const std::function<void(const ConvergenceRow&)>& on_row) {
  if (!problem.exact) {
    throw std::invalid_argument("run_convergence: problem '" + problem.name + "' has no exact solution");
  }
  ConvergenceTable table;
  table.k = options.k;
  for (int n : options.levels) {
    SolverConfig cfg;
    cfg.dt = options.dt_rule == TimeStepRule::Linear ? 1.0 / n : 1.0 / (static_cast<double>(n) * n);
    cfg.final_time = options.final_time;
    cfg.scheme = options.scheme;
    cfg.tau = options.tau;
    cfg.newton_tolerance = options.newton_tolerance;
    cfg.newton_max_iterations = options.newton_max_iterations;
    cfg.linear_solver = options.linear_solver;

    auto disc = std::make_shared<const Discretization>(generate_structured_square(n), options.k, problem.bc);
    HdgSolver solver(disc, problem, cfg);
    const State final = solver.run().final_state;
    const double t = final.t;
    const auto& uex = problem.exact->u[0];
    const auto& qex = problem.exact->q[0];
    const auto& l = disc->layout;

    ConvergenceRow row;
    row.n = n;
    row.dt = cfg.dt;
    row.err_q = l2_error_flux(*disc, final.alpha.head(l.n_flux()),
                              [&](const Point& x) { return qex(t, x); });
    row.err_u = l2_error(*disc, ScalarSpace::W, final.beta.head(l.n_scalar()),
                         [&](const Point& x) { return uex(t, x); });
    row.err_ustar = l2_error(*disc, ScalarSpace::Z, final.gamma.head(l.n_enriched()),
                             [&](const Point& x) { return uex(t, x); });
    const double nan = std::numeric_limits<double>::quiet_NaN();
    row.rate_q = row.rate_u = row.rate_ustar = nan;
    if (!table.rows.empty()) {
      const auto& prev = table.rows.back();
      row.rate_q = convergence_rate(prev.err_q, row.err_q, prev.n, n);
      row.rate_u = convergence_rate(prev.err_u, row.err_u, prev.n, n);
      row.rate_ustar = convergence_rate(prev.err_ustar, row.err_ustar, prev.n, n);
    }
    table.rows.push_back(row);
    if (on_row) on_row(row);
  }
  return table;
}

void write_table_text(const ConvergenceTable& table, std::ostream& out) {
  char line[256];
  std::snprintf(line, sizeof line, "%-6s %-8s %-11s %-6s %-11s %-6s %-11s %-6s\n", "k", "h/sqrt2",
                "|q-q_h|", "rate", "|u-u_h|", "rate", "|u-u_h*|", "rate");
  out << line;
  for (const auto& r : table.rows) {
    std::snprintf(line, sizeof line, "%-6d %-8s %-11s %-6s %-11s %-6s %-11s %-6s\n", table.k,
                  level_label(r.n).c_str(), format_error(r.err_q).c_str(), format_rate(r.rate_q).c_str(),
                  format_error(r.err_u).c_str(), format_rate(r.rate_u).c_str(),
                  format_error(r.err_ustar).c_str(), format_rate(r.rate_ustar).c_str());
    out << line;
  }
}

void write_table_csv(const ConvergenceTable& table, std::ostream& out) {
  out << "level,err_q,rate_q,err_u,rate_u,err_ustar,rate_ustar\n";
  for (const auto& r : table.rows) {
    char lvl[32];
    std::snprintf(lvl, sizeof lvl, "%.10g", 1.0 / r.n);
    out << lvl << ',' << format_error(r.err_q) << ',' << format_rate(r.rate_q) << ','
        << format_error(r.err_u) << ',' << format_rate(r.rate_u) << ',' << format_error(r.err_ustar)
        << ',' << format_rate(r.rate_ustar) << '\n';
  }
}

}  // namespace ihdg
