// ihdg: command-line front end.
//
//   ihdg converge --config FILE [--csv PATH]
//   ihdg run --config FILE [--dump-matrices DIR]
//   ihdg mesh-info (--structured N | --file PATH)
//
// Exit codes: 0 success, 2 configuration error, 3 Newton non-convergence,
// 4 I/O error, 1 anything else.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ihdg/analysis.hpp"
#include "ihdg/config.hpp"
#include "ihdg/export.hpp"
#include "ihdg/mesh.hpp"
#include "ihdg/solver.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNonConvergence = 3;
constexpr int kExitIo = 4;

ihdg::Mesh load_source(const ihdg::MeshSource& src) {
  if (src.structured_n > 0) return ihdg::generate_structured_square(src.structured_n);
  return ihdg::load_mesh_file(src.path);
}

void ensure_directory(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::ios_base::failure("cannot create directory '" + dir + "': " + ec.message());
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::ios_base::failure("cannot open '" + path + "' for writing");
  return out;
}

int cmd_converge(const std::string& config_path, const std::string& csv_path) {
  const ihdg::RunConfig cfg = ihdg::load_config_file(config_path);
  cfg.validate_for_converge();
  const ihdg::ProblemSpec problem = ihdg::make_problem(cfg.problem);
  const ihdg::ConvergenceOptions opts = cfg.convergence_options();

  const ihdg::ConvergenceTable table = ihdg::run_convergence(problem, opts, [](const ihdg::ConvergenceRow& r) {
    std::fprintf(stderr, "level n=%d done (dt=%g)\n", r.n, r.dt);
  });
  ihdg::write_table_text(table, std::cout);

  std::string csv = csv_path;
  if (csv.empty()) {
    ensure_directory(cfg.output);
    csv = (fs::path(cfg.output) / "convergence.csv").string();
  }
  std::ofstream out = open_output(csv);
  ihdg::write_table_csv(table, out);
  if (!out) throw std::ios_base::failure("write failed for '" + csv + "'");
  return 0;
}

void dump_matrices(const ihdg::SystemMatrices& sys, const std::string& dir) {
  ensure_directory(dir);
  const std::pair<const char*, const ihdg::SparseMatrix*> mats[] = {
      {"A1", &sys.A1}, {"A2", &sys.A2}, {"A3", &sys.A3}, {"A4", &sys.A4}, {"A5", &sys.A5},
      {"A6", &sys.A6}, {"A7", &sys.A7}, {"A8", &sys.A8}, {"A9", &sys.A9}, {"M", &sys.M}};
  for (const auto& [name, m] : mats) {
    const std::string path = (fs::path(dir) / (std::string(name) + ".txt")).string();
    std::ofstream out = open_output(path);
    ihdg::write_triplets(*m, out);
  }
}

/// Index into the run's time levels (0 = initial state) closest to t.
std::size_t nearest_level(const std::vector<double>& levels, double t) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < levels.size(); ++i) {
    if (std::abs(levels[i] - t) < std::abs(levels[best] - t)) best = i;
  }
  return best;
}

void write_snapshot(const ihdg::Discretization& disc, const ihdg::ProblemSpec& problem,
                    const ihdg::State& state, const std::string& dir) {
  const struct {
    ihdg::ExportSpace space;
    const char* label;
  } spaces[] = {{ihdg::ExportSpace::Scalar, "u"},
                {ihdg::ExportSpace::Enriched, "ustar"},
                {ihdg::ExportSpace::FluxX, "qx"},
                {ihdg::ExportSpace::FluxY, "qy"}};
  char stamp[64];
  std::snprintf(stamp, sizeof stamp, "t%.6g", state.t);
  for (int c = 0; c < problem.num_fields(); ++c) {
    for (const auto& s : spaces) {
      const std::string name = problem.field_names[c] + "_" + s.label + "_" + stamp + ".csv";
      ihdg::export_field(disc, state, s.space, c, (fs::path(dir) / name).string());
    }
  }
}

int cmd_run(const std::string& config_path, const std::string& matrix_dir) {
  const ihdg::RunConfig cfg = ihdg::load_config_file(config_path);
  cfg.validate_for_run();
  const ihdg::ProblemSpec problem = ihdg::make_problem(cfg.problem);
  auto disc = std::make_shared<const ihdg::Discretization>(load_source(*cfg.mesh), cfg.k, problem.bc);
  ihdg::HdgSolver solver(disc, problem, cfg.solver_config());
  if (!matrix_dir.empty()) dump_matrices(solver.system(), matrix_dir);

  std::vector<double> levels{0.0};
  for (double dt : solver.time_steps()) levels.push_back(levels.back() + dt);
  levels.back() = cfg.final_time;
  std::set<std::size_t> wanted;
  for (double t : cfg.snapshots) wanted.insert(nearest_level(levels, t));
  if (!wanted.empty()) ensure_directory(cfg.output);

  std::size_t level = 0;
  solver.run([&](const ihdg::State& state, const ihdg::StepLog* log) {
    if (log) {
      std::cout << ihdg::format_step_log(*log) << '\n';
      ++level;
    }
    if (wanted.count(level)) write_snapshot(*disc, problem, state, cfg.output);
  });
  std::cout.flush();
  return 0;
}

int cmd_mesh_info(int structured_n, const std::string& path) {
  const ihdg::Mesh mesh = structured_n > 0 ? ihdg::generate_structured_square(structured_n)
                                           : ihdg::load_mesh_file(path);
  const ihdg::MeshMetrics m = ihdg::mesh_metrics(mesh);
  double area = 0.0;
  for (std::size_t e = 0; e < mesh.num_elements(); ++e) area += mesh.area(e);
  std::printf("vertices          %zu\n", mesh.num_vertices());
  std::printf("elements          %zu\n", mesh.num_elements());
  std::printf("faces             %zu (%zu interior, %zu boundary)\n", mesh.num_faces(),
              mesh.num_interior_faces(), mesh.num_boundary_faces());
  std::printf("area              %.12g\n", area);
  std::printf("h_max             %.12g\n", m.h_max);
  std::printf("h_min             %.12g\n", m.h_min);
  std::printf("shape_regularity  %.12g\n", m.shape_regularity);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Interpolatory HDG solver for semilinear reaction-diffusion problems"};
  app.require_subcommand(1);

  std::string config_path, csv_path, matrix_dir, mesh_path;
  int structured_n = 0;

  auto* converge = app.add_subcommand("converge", "Run a convergence study and print the error table");
  converge->add_option("-c,--config", config_path, "Configuration file")->required();
  converge->add_option("--csv", csv_path, "CSV output path (default: <output>/convergence.csv)");

  auto* run = app.add_subcommand("run", "Run one simulation, logging every step and exporting snapshots");
  run->add_option("-c,--config", config_path, "Configuration file")->required();
  run->add_option("--dump-matrices", matrix_dir, "Write the assembled matrices as triplets to DIR");

  auto* info = app.add_subcommand("mesh-info", "Print mesh size and quality metrics");
  auto* opt_n = info->add_option("--structured", structured_n, "Structured unit square with N cells per side")
                    ->check(CLI::PositiveNumber);
  auto* opt_file = info->add_option("--file", mesh_path, "Mesh file");
  opt_n->excludes(opt_file);
  opt_file->excludes(opt_n);
  info->require_option(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*converge) return cmd_converge(config_path, csv_path);
    if (*run) return cmd_run(config_path, matrix_dir);
    return cmd_mesh_info(structured_n, mesh_path);
  } catch (const ihdg::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ihdg::NonConvergenceError& e) {
    std::cerr << "solver error: " << e.what() << '\n';
    return kExitNonConvergence;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const ihdg::MeshError& e) {
    std::cerr << "mesh error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
