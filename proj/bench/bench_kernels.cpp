// Serial reference paths against the OpenMP kernels.
#include <benchmark/benchmark.h>

#include "dw/class_group.hpp"
#include "dw/cohomology.hpp"
#include "dw/dw_invariant.hpp"

using namespace dw;

namespace {

Exec exec_of(const benchmark::State& s) { return s.range(0) ? Exec::parallel : Exec::serial; }

void label(benchmark::State& s) { s.SetLabel(s.range(0) ? "parallel" : "serial"); }

void BM_ReducedForms(benchmark::State& s) {
    for (auto _ : s) benchmark::DoNotOptimize(reduced_forms(-9999991, exec_of(s)).size());
    label(s);
}
BENCHMARK(BM_ReducedForms)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Differential(benchmark::State& s) {
    auto m = GModule::trivial_cyclic(FiniteGroup::quaternion(), 4);
    Cochain c(m, 3);
    for (std::size_t i = 0; i < c.size(); ++i) c.set(i, static_cast<GModule::Elem>(i * 7 % 4));
    for (auto _ : s) benchmark::DoNotOptimize(differential(c, exec_of(s)));
    label(s);
}
BENCHMARK(BM_Differential)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

void BM_Cohomology(benchmark::State& s) {
    auto m = GModule::trivial_cyclic(FiniteGroup::dihedral(4), 4);
    for (auto _ : s) benchmark::DoNotOptimize(cohomology(m, 3, exec_of(s)).order());
    label(s);
}
BENCHMARK(BM_Cohomology)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_TensorFill(benchmark::State& s) {
    auto f = FieldSpec::make({29, -31, -43, -47, 101});
    EtaleOptions opt;
    opt.exec = exec_of(s);
    for (auto _ : s) {
        TraceTensor T(f, opt);
        benchmark::DoNotOptimize(T.entries());
    }
    label(s);
}
BENCHMARK(BM_TensorFill)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->Iterations(3);

void BM_Invariants(benchmark::State& s) {
    Etale X(FieldSpec::make({-11, -83, -107, -139, -191}));
    (void)X.tensor().entries();
    auto q8 = q8_preset();
    for (auto _ : s) {
        benchmark::DoNotOptimize(z_omega(X, q8, exec_of(s)));
        benchmark::DoNotOptimize(z_omega_hat(X, q8, exec_of(s)));
    }
    label(s);
}
BENCHMARK(BM_Invariants)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
