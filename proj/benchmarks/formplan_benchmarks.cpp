#include <benchmark/benchmark.h>

#include <random>

#include "formplan/cost.hpp"
#include "formplan/optimizer.hpp"
#include "formplan/scenario_io.hpp"

using namespace formplan;

namespace {

const Scenario& bench() {
  static const Scenario s = load_scenario_file(std::string(FORMPLAN_SCENARIO_DIR) + "/bench.scn");
  return s;
}

std::vector<double> random_angles(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> a(-1.5, 1.5);
  std::vector<double> out(n);
  for (auto& x : out) x = a(rng);
  return out;
}

Objective objective_for(const Scenario& s) {
  return [&s](std::span<const double> x) {
    return evaluate(path_from_coordinates(x, s.start, s.target), s).total;
  };
}

void BM_Evaluate(benchmark::State& state) {
  const auto& s = bench();
  const auto bounds = path_search_bounds(s.operation_space, s.pso.free_waypoints);
  const auto path =
      path_from_coordinates(decode_angles(random_angles(bounds.size(), 1), bounds), s.start, s.target);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(path, s));
}
BENCHMARK(BM_Evaluate);

void BM_Decode(benchmark::State& state) {
  const auto& s = bench();
  const auto angles = random_angles(3 * static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(decode(angles, s.operation_space, s.start, s.target));
}
BENCHMARK(BM_Decode)->Arg(10)->Arg(40);

template <class Swarm, class Init, class Step>
void bench_step(benchmark::State& state, Init init, Step step) {
  const auto& s = bench();
  const auto bounds = path_search_bounds(s.operation_space, s.pso.free_waypoints);
  const auto f = objective_for(s);
  std::mt19937_64 rng(3);
  Swarm swarm = init(static_cast<std::size_t>(state.range(0)), bounds, f, rng,
                     corridor_sampler(bounds, s.start, s.target, s.pso.init_spread));
  const auto coeff = uniform_coefficients(rng);
  for (auto _ : state) step(swarm, bounds, s.pso, f, coeff);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_StepTheta(benchmark::State& state) {
  bench_step<ThetaSwarm>(state, init_theta_swarm, step_theta);
}
BENCHMARK(BM_StepTheta)->Arg(100);

void BM_StepClassic(benchmark::State& state) {
  bench_step<ClassicSwarm>(state, init_classic_swarm, step_classic);
}
BENCHMARK(BM_StepClassic)->Arg(100);

void BM_Run(benchmark::State& state) {
  Scenario s = bench();
  s.pso.variant = state.range(0) ? Variant::theta : Variant::classic;
  for (auto _ : state) benchmark::DoNotOptimize(run(s));
}
BENCHMARK(BM_Run)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
