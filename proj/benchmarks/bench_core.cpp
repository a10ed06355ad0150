#include <benchmark/benchmark.h>

#include <random>

#include "relaxdiff/initialization.hpp"
#include "relaxdiff/integrator.hpp"
#include "relaxdiff/mollifier.hpp"

namespace {

using namespace relaxdiff;

ImageField noise_image(int n, int k) {
    const GridSpec g({n, n}, k);
    return add_noise(ImageField(g), {NoiseKind::GaussianIID, 0.3, 1});
}

void BM_DiffusionApply(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const ImageField u = noise_image(n, 3);
    const DiffusionOperator op(init_H0(u, 5, 0.1));
    std::vector<double> out(u.values.size());
    for (auto _ : state) {
        op.apply(u.values, out);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(u.grid.cells()));
}
BENCHMARK(BM_DiffusionApply)->Arg(32)->Arg(64)->Arg(128);

void BM_Convolve(benchmark::State& state) {
    const ImageField u = noise_image(static_cast<int>(state.range(0)), 3);
    const Kernel kernel = Kernel::gaussian(1.0);
    for (auto _ : state) benchmark::DoNotOptimize(convolve(u, kernel).values.data());
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(u.grid.cells()));
}
BENCHMARK(BM_Convolve)->Arg(64)->Arg(128);

void BM_ResponseField(benchmark::State& state) {
    const ImageField u = noise_image(static_cast<int>(state.range(0)), 3);
    const FilterParams p;
    const ResponseFn f = make_response(p.response);
    for (auto _ : state) benchmark::DoNotOptimize(response_field(u, p, f).values.data());
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(u.grid.cells()));
}
BENCHMARK(BM_ResponseField)->Arg(64);

void BM_InitH0(benchmark::State& state) {
    const ImageField u = noise_image(static_cast<int>(state.range(0)), 3);
    for (auto _ : state) benchmark::DoNotOptimize(init_H0(u, 5, 0.1).values.data());
}
BENCHMARK(BM_InitH0)->Arg(64);

void BM_RunStep(benchmark::State& state) {
    const ImageField u = noise_image(static_cast<int>(state.range(0)), 3);
    const Tensor4Field h0 = init_H0(u, 5, 0.1);
    FilterParams p;
    p.t_end = p.dt;
    for (auto _ : state) benchmark::DoNotOptimize(run(u, h0, p).state.u.values.data());
}
BENCHMARK(BM_RunStep)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
