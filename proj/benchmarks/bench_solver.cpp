#include <benchmark/benchmark.h>

#include "ihdg/assembly.hpp"
#include "ihdg/solver.hpp"

using namespace ihdg;

namespace {

std::shared_ptr<const Discretization> square(int n, int k, BoundaryCondition bc) {
  return std::make_shared<const Discretization>(generate_structured_square(n), k, bc);
}

SolverConfig config(double dt) {
  SolverConfig cfg;
  cfg.dt = dt;
  cfg.final_time = 1.0;
  cfg.scheme = TimeScheme::CrankNicolson;
  return cfg;
}

void BM_AssembleSystem(benchmark::State& state) {
  const auto disc = square(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)),
                           BoundaryCondition::Dirichlet);
  const std::vector<double> tau(disc->mesh.num_elements(), 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(assemble_system(*disc, tau));
  state.SetItemsProcessed(state.iterations() * disc->mesh.num_elements());
}
BENCHMARK(BM_AssembleSystem)->Args({16, 0})->Args({16, 1})->Args({32, 1})->Unit(benchmark::kMillisecond);

void BM_CondensedSolve(benchmark::State& state) {
  HdgSolver s(square(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)), BoundaryCondition::Dirichlet),
              allen_cahn(), config(0.01));
  const State x0 = s.initial_state();
  const StepContext ctx = s.step_context(x0, 0.01);
  const Eigen::VectorXd x = s.stack(x0);
  const JacobianBlocks jac = s.jacobian(x, ctx);
  const Eigen::VectorXd r = s.residual(x, ctx);
  for (auto _ : state) benchmark::DoNotOptimize(condensed_solve(jac, r));
}
BENCHMARK(BM_CondensedSolve)->Args({8, 1})->Args({16, 1})->Args({32, 0})->Unit(benchmark::kMillisecond);

void BM_NewtonStepAllenCahn(benchmark::State& state) {
  HdgSolver s(square(static_cast<int>(state.range(0)), 1, BoundaryCondition::Dirichlet), allen_cahn(), config(0.01));
  const State x0 = s.initial_state();
  for (auto _ : state) benchmark::DoNotOptimize(s.step(x0, 0.01));
}
BENCHMARK(BM_NewtonStepAllenCahn)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_NewtonStepSchnakenberg(benchmark::State& state) {
  HdgSolver s(square(static_cast<int>(state.range(0)), 1, BoundaryCondition::Neumann), schnakenberg(true),
              config(0.001));
  const State x0 = s.initial_state();
  for (auto _ : state) benchmark::DoNotOptimize(s.step(x0, 0.001));
}
BENCHMARK(BM_NewtonStepSchnakenberg)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
