#include <benchmark/benchmark.h>

#include "eljx/classical.hpp"
#include "eljx/floquet.hpp"
#include "eljx/fock_basis.hpp"
#include "eljx/model.hpp"
#include "eljx/spectroscopy.hpp"

using namespace eljx;

namespace {

ModelParams reference_point(int N) {
  ModelParams p;
  p.N = N;
  p.omega = 2.9619219587722443; // 2 Omega0
  return p;
}

void BM_BasisEnumerate(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(FockBasis::enumerate(N, 12));
  }
}
BENCHMARK(BM_BasisEnumerate)->Arg(1)->Arg(2)->Arg(3);

void BM_IndexOf(benchmark::State& state) {
  const FockBasis basis = FockBasis::enumerate(3, 12);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(basis.index_of(basis.state(i)));
    i = (i + 97) % basis.size();
  }
}
BENCHMARK(BM_IndexOf);

void BM_HamiltonianAssembly(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  ModelParams p = reference_point(N);
  const auto d = DisorderRealization::draw(1, p.W, p.M);
  const FockBasis basis = FockBasis::enumerate(N, 12);
  Eigen::MatrixXd H;
  double t = 0.0;
  for (auto _ : state) {
    hamiltonian_matrix_real(t, basis, p, d, H);
    benchmark::DoNotOptimize(H.data());
    t += 1e-3;
  }
}
BENCHMARK(BM_HamiltonianAssembly)->Arg(1)->Arg(2)->Arg(3);

void BM_FloquetOperator(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  ModelParams p = reference_point(N);
  const auto d = DisorderRealization::draw(1, p.W, p.M);
  PropagatorSettings s;
  for (auto _ : state) {
    benchmark::DoNotOptimize(floquet_operator(p, d, s));
  }
}
BENCHMARK(BM_FloquetOperator)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_FullAnalysisN2(benchmark::State& state) {
  ModelParams p = reference_point(2);
  const auto d = DisorderRealization::draw(1, p.W, p.M);
  PropagatorSettings s;
  for (auto _ : state) {
    benchmark::DoNotOptimize(floquet_analysis(p, d, s));
  }
}
BENCHMARK(BM_FullAnalysisN2)->Unit(benchmark::kMillisecond);

void BM_Monodromy(benchmark::State& state) {
  ModelParams p = reference_point(1);
  p.g1 = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(monodromy_matrix(p));
  }
}
BENCHMARK(BM_Monodromy)->Unit(benchmark::kMicrosecond);

void BM_PowerSpectrumQ700(benchmark::State& state) {
  SignalTrace tr;
  tr.period = 2.0;
  tr.values = cosine_sum_trace({0.3, 0.7, 1.1}, {0.5, 0.3, 0.2}, 700, 2.0);
  const std::vector<SignalTrace> traces{tr};
  for (auto _ : state) {
    benchmark::DoNotOptimize(power_spectrum(traces));
  }
}
BENCHMARK(BM_PowerSpectrumQ700)->Unit(benchmark::kMicrosecond);

} // namespace

BENCHMARK_MAIN();
