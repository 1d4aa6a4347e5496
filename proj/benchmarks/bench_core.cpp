#include <benchmark/benchmark.h>

#include "evocert/material_law.hpp"
#include "evocert/random.hpp"
#include "evocert/solver.hpp"
#include "evocert/time_derivative.hpp"
#include "evocert/transport.hpp"

namespace {

using namespace evocert;

Scenario make_scenario(int n, int cells) {
  TimeGrid g = build_grid(0.0, 1.0, n, 1.5);
  const int d = 2;
  auto rng = make_rng(11);
  MatrixFamily m0(static_cast<std::size_t>(n)), m1(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    m0[k] = random_spd(rng, d, 1.0);
    m1[k] = random_matrix(rng, d, d, 0.2);
  }
  MaterialLaw law = MaterialLaw::create(d, std::move(m0), std::move(m1),
                                        std::nullopt, Regime::commutator, 0.5);
  Scenario s(g, std::move(law), GridFunction(g, d * cells));
  s.transport = TransportSpec::create(cells, d, Eigen::MatrixXd::Identity(d, d));
  GridFunction f(g, d * cells);
  f.values() = random_vector(rng, n * d * cells);
  s.forcing = std::move(f);
  return s;
}

void BM_march(benchmark::State& state) {
  Scenario s = make_scenario(static_cast<int>(state.range(0)), 8);
  for (auto _ : state) benchmark::DoNotOptimize(march(s).solution_norm);
}
BENCHMARK(BM_march)->Arg(16)->Arg(32)->Arg(64);

void BM_accretivity_margin(benchmark::State& state) {
  Scenario s = make_scenario(static_cast<int>(state.range(0)), 8);
  SpaceTimeOperator op = assemble(s);
  for (auto _ : state) benchmark::DoNotOptimize(accretivity_margin(op).margin);
}
BENCHMARK(BM_accretivity_margin)->Arg(8)->Arg(16)->Arg(32);

void BM_weighted_adjoint(benchmark::State& state) {
  Scenario s = make_scenario(static_cast<int>(state.range(0)), 8);
  SpaceTimeOperator op = assemble(s);
  for (auto _ : state) benchmark::DoNotOptimize(weighted_adjoint(op).matrix.sum());
}
BENCHMARK(BM_weighted_adjoint)->Arg(8)->Arg(16)->Arg(32);

void BM_d0_operator(benchmark::State& state) {
  TimeGrid g = build_grid(0.0, 1.0, static_cast<int>(state.range(0)), 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(d0_operator(g, 4).matrix.sum());
}
BENCHMARK(BM_d0_operator)->Arg(64)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
