#include "hs/eigen.hpp"
#include "hs/matrix.hpp"
#include "hs/spectral.hpp"
#include "hs/tridiag.hpp"

#include <benchmark/benchmark.h>

namespace {

const hs::LameProblem& bench_problem() {
    static const hs::LameProblem p(0.0, 2.0, 8.0, 1.0, 0.3, 2.0);
    return p;
}

void BM_bisection_eigenvalues(benchmark::State& state) {
    const int k = static_cast<int>(state.range(0));
    const auto np = hs::normalize(bench_problem());
    const auto m = hs::build_matrix(np, k);
    const auto s = hs::symmetrize(m);
    for (auto _ : state) {
        auto ev = hs::tridiag_eigenvalues_bisect(s.diag, s.offdiag, 1e-13 * np.span());
        benchmark::DoNotOptimize(ev);
    }
}
BENCHMARK(BM_bisection_eigenvalues)->Arg(64)->Arg(256)->Arg(1024);

void BM_eigenpair_with_certificate(benchmark::State& state) {
    const int k = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto spec = hs::van_vleck_zeros(bench_problem(), k);
        benchmark::DoNotOptimize(spec);
    }
}
BENCHMARK(BM_eigenpair_with_certificate)->Arg(8)->Arg(24)->Arg(48);

void BM_rho_A_eval(benchmark::State& state) {
    const hs::RhoADensity rho(bench_problem());
    double x = 5.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(rho(x));
    }
}
BENCHMARK(BM_rho_A_eval);

void BM_trace_power_sums(benchmark::State& state) {
    const int k = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(hs::zero_power_sums(bench_problem(), k));
    }
}
BENCHMARK(BM_trace_power_sums)->Arg(512)->Arg(2048);

} // namespace
