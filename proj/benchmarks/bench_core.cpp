// Microbenchmarks for the hot paths: ensemble construction, curvature
// matrix, entanglement measures, sweep points, and RK4 steps.

#include "maxent/dynamics.hpp"
#include "maxent/entanglement.hpp"
#include "maxent/gibbs.hpp"
#include "maxent/models.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace maxent;

namespace {

ComplexMatrix random_hermitian(Eigen::Index dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  ComplexMatrix M(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) {
      const double re = g(rng);
      const double im = g(rng);
      M(i, j) = Complex(re, im);
    }
  return 0.5 * (M + M.adjoint());
}

ObservableSet random_set(Eigen::Index dim, std::size_t count,
                         std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<HermitianObservable> obs;
  for (std::size_t l = 0; l < count; ++l)
    obs.emplace_back(random_hermitian(dim, rng), "A" + std::to_string(l));
  return ObservableSet(std::move(obs));
}

void BM_gibbs_ensemble(benchmark::State& state) {
  const Eigen::Index dim = state.range(0);
  const ObservableSet obs = random_set(dim, 2, 1);
  const Multipliers lambda({0.8, -0.3});
  for (auto _ : state)
    benchmark::DoNotOptimize(gibbs_state(obs, lambda).log_partition());
  state.SetComplexityN(dim);
}
BENCHMARK(BM_gibbs_ensemble)->Arg(16)->Arg(64)->Arg(256)->Complexity();

void BM_kubo_mori_hessian(benchmark::State& state) {
  const ObservableSet obs = random_set(16, 4, 2);
  const Multipliers lambda({0.5, -0.2, 0.9, 0.1});
  for (auto _ : state)
    benchmark::DoNotOptimize(kubo_mori_hessian(obs, lambda));
}
BENCHMARK(BM_kubo_mori_hessian);

void BM_maxent_invert(benchmark::State& state) {
  const ObservableSet obs = random_set(8, 4, 3);
  const auto target = grad_free_energy(obs, Multipliers({0.7, -0.4, 1.1, 0.2}));
  for (auto _ : state)
    benchmark::DoNotOptimize(maxent_invert(obs, target, 1e-9, 50));
}
BENCHMARK(BM_maxent_invert);

void BM_negativity_half_split(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const DensityMatrix rho =
      gibbs_state(tfim_observables(n, true), Multipliers({4.0, 4.0})).state();
  const Bipartition bp = half_split(static_cast<std::size_t>(n));
  for (auto _ : state)
    benchmark::DoNotOptimize(negativity(rho, bp).negativity);
}
BENCHMARK(BM_negativity_half_split)->Arg(4)->Arg(6)->Arg(8);

void BM_pairwise_concurrence(benchmark::State& state) {
  const DensityMatrix rho =
      gibbs_state(tfim_observables(8, true), Multipliers({4.0, 4.0})).state();
  for (auto _ : state)
    benchmark::DoNotOptimize(pairwise_concurrence(rho, 3, 4));
}
BENCHMARK(BM_pairwise_concurrence);

void BM_sweep_point(benchmark::State& state) {
  const ObservableSet obs = tfim_observables(8, true);
  const Bipartition bp = half_split(8);
  double g = 0.2;
  for (auto _ : state) {
    const GibbsEnsemble ens = gibbs_state(obs, Multipliers({20.0, 20.0 * g}));
    benchmark::DoNotOptimize(negativity(ens.state(), bp).negativity);
    benchmark::DoNotOptimize(pairwise_concurrence(ens.state(), 0, 1));
    g = (g < 2.0) ? g + 0.02 : 0.2;
  }
}
BENCHMARK(BM_sweep_point);

void BM_propagate_dephasing(benchmark::State& state) {
  const LindbladSpec spec(
      HermitianObservable(ComplexMatrix::Zero(4, 4), "H0"),
      {kron(pauli_z(), identity(2)), kron(identity(2), pauli_z())},
      {0.3, 0.3});
  const DensityMatrix rho0 = bell_phi_plus();
  for (auto _ : state)
    benchmark::DoNotOptimize(propagate(rho0, spec, 0.5, 100).states.size());
}
BENCHMARK(BM_propagate_dephasing);

} // namespace

BENCHMARK_MAIN();
