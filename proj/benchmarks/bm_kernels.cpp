#include <benchmark/benchmark.h>

#include "hessmin/diagnostics.hpp"
#include "hessmin/energy.hpp"
#include "hessmin/mesh.hpp"
#include "hessmin/operators.hpp"
#include "hessmin/polynomial.hpp"
#include "hessmin/solver.hpp"

using namespace hessmin;

static void BM_Energy(benchmark::State& state) {
  const auto m = Mesh::build(2, static_cast<int>(state.range(0)));
  const EnergyModel model = EnergyModel::uniform(m, 3.0, 1e-3);
  const ScalarField u = Polynomial::preset("radial-quartic", 2).sample(m);
  for (auto _ : state) benchmark::DoNotOptimize(energy(model, u));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(m->quadrature_nodes().size()));
}
BENCHMARK(BM_Energy)->Arg(65)->Arg(257);

static void BM_Gradient(benchmark::State& state) {
  const auto m = Mesh::build(2, static_cast<int>(state.range(0)));
  const EnergyModel model = EnergyModel::uniform(m, 3.0, 1e-3);
  const ScalarField u = Polynomial::preset("radial-quartic", 2).sample(m);
  for (auto _ : state) benchmark::DoNotOptimize(energy_gradient(model, u));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(m->quadrature_nodes().size()));
}
BENCHMARK(BM_Gradient)->Arg(65)->Arg(257);

static void BM_Hessian3d(benchmark::State& state) {
  const auto m = Mesh::build(3, static_cast<int>(state.range(0)));
  const ScalarField u = Polynomial::preset("cubic", 3).sample(m);
  for (auto _ : state) benchmark::DoNotOptimize(hessian(u));
}
BENCHMARK(BM_Hessian3d)->Arg(33);

static void BM_IntegrateBall(benchmark::State& state) {
  const auto m = Mesh::build(2, 257);
  const ScalarField u(m, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(integrate_ball(u, {0.1, 0.0, 0.0}, 0.5));
}
BENCHMARK(BM_IntegrateBall);

static void BM_HolderAllPairs(benchmark::State& state) {
  const auto m = Mesh::build(2, 65);
  const VectorField du = gradient(Polynomial::preset("radial-quartic", 2).sample(m));
  for (auto _ : state) benchmark::DoNotOptimize(holder_seminorm(du, 0.5, 0.5, PairSampling::all_pairs()));
}
BENCHMARK(BM_HolderAllPairs)->Unit(benchmark::kMillisecond);

static void BM_SolveP2(benchmark::State& state) {
  const auto m = Mesh::build(2, static_cast<int>(state.range(0)));
  const EnergyModel model = EnergyModel::uniform(m, 2.0);
  const ScalarField g = Polynomial::preset("cubic", 2).sample(m);
  for (auto _ : state) benchmark::DoNotOptimize(minimize(model, g, SolveConfig{}));
}
BENCHMARK(BM_SolveP2)->Arg(65)->Arg(129)->Unit(benchmark::kMillisecond);

static void BM_SolveP3(benchmark::State& state) {
  const auto m = Mesh::build(2, 33);
  const EnergyModel model = EnergyModel::uniform(m, 3.0);
  const ScalarField g = Polynomial::preset("radial-quartic", 2).sample(m);
  for (auto _ : state) benchmark::DoNotOptimize(minimize(model, g, SolveConfig{}));
}
BENCHMARK(BM_SolveP3)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
