#include <benchmark/benchmark.h>

#include "fqlga/lattice.hpp"
#include "fqlga/philox.hpp"
#include "fqlga/pcqubit.hpp"
#include "fqlga/schemes.hpp"

using namespace fqlga;

static void BM_EigHermitian4(benchmark::State& state) {
  pcqubit::CoupledParams p;
  p.first.flux = 0.508;
  p.second.flux = 0.51;
  const auto h = pcqubit::coupled_h(p);
  for (auto _ : state) benchmark::DoNotOptimize(smallmat::eig_hermitian(h));
}
BENCHMARK(BM_EigHermitian4);

static void BM_Philox(benchmark::State& state) {
  rng::EnsembleKey key{7, 3, 11};
  std::uint64_t member = 0;
  for (auto _ : state) benchmark::DoNotOptimize(rng::member_draw(key, member++));
}
BENCHMARK(BM_Philox);

static void BM_StepExact(benchmark::State& state) {
  const auto sites = static_cast<std::size_t>(state.range(0));
  const auto field =
      lattice::OccupationField::equilibrium(lattice::discretize(lattice::GaussianProfile{sites / 2.0, 6.0, 1.0}, sites));
  const auto scheme = schemes::CollisionScheme::random_phase(schemes::CollisionScheme::ideal(), schemes::UniformFullCircle{});
  for (auto _ : state) benchmark::DoNotOptimize(lattice::step(field, scheme, lattice::MeasurementMode::exact()));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_StepExact)->Arg(64)->Arg(1024);

static void BM_StepSampled(benchmark::State& state) {
  const auto field = lattice::OccupationField::equilibrium(lattice::discretize(lattice::GaussianProfile{}, 64));
  const auto scheme = schemes::CollisionScheme::random_phase(schemes::CollisionScheme::ideal(), schemes::UniformFullCircle{});
  const auto mode = lattice::MeasurementMode::sampled(static_cast<std::uint64_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(lattice::step(field, scheme, mode));
  state.SetItemsProcessed(state.iterations() * 64 * state.range(0));
}
BENCHMARK(BM_StepSampled)->Arg(1000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
