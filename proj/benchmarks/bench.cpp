// bench.cpp — hot paths: single solves, spectrum grids, phonon integration
#include <benchmark/benchmark.h>

#include "omcsim/fullmodel.hpp"
#include "omcsim/sideband.hpp"

namespace {

using namespace omcsim;

SystemParams reference_system(int detuning_sign) {
  SystemParams sys;
  sys.gamma = 1.0;
  sys.gamma_m = 1e-3;
  sys.omega_m = 1e3;
  sys.g0 = std::sqrt(0.5 * sys.gamma_m * sys.gamma);  // |eta_r| = gamma_m / 2
  sys.n_t = 10.0;
  sys.detuning_sign = detuning_sign;
  return sys;
}

void BM_closed_rows(benchmark::State& state) {
  const SystemParams sys = reference_system(+1);
  double nu = 0.0;
  for (auto _ : state) {
    nu += 1e-6;
    benchmark::DoNotOptimize(sideband::solve_positive(sys, nu));
  }
}
BENCHMARK(BM_closed_rows);

void BM_dense_solve(benchmark::State& state) {
  const SystemParams sys = reference_system(+1);
  double nu = 0.0;
  for (auto _ : state) {
    nu += 1e-6;
    benchmark::DoNotOptimize(
        fullmodel::solve_transfer(sys, sys.omega_m + nu, sys.omega_m));
  }
}
BENCHMARK(BM_dense_solve);

void BM_spectrum_grid(benchmark::State& state) {
  const SystemParams sys = reference_system(+1);
  const int points = static_cast<int>(state.range(0));
  for (auto _ : state) {
    double acc = 0.0;
    for (int i = 0; i < points; ++i) {
      const double nu = (i - points / 2) * (1e-2 * sys.gamma_m);
      acc += fullmodel::quadrature_spectrum(sys, sys.omega_m + nu, sys.omega_m,
                                            0.0)
                 .s_y;
    }
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_spectrum_grid)->Arg(1001)->Unit(benchmark::kMillisecond);

void BM_phonon_integral(benchmark::State& state) {
  const SystemParams sys = reference_system(+1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fullmodel::mean_phonon_number(sys, sys.omega_m));
  }
}
BENCHMARK(BM_phonon_integral)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
