#include <benchmark/benchmark.h>

#include <nclf/biortho.hpp>
#include <nclf/leapfrog.hpp>
#include <nclf/ncnet.hpp>
#include <nclf/network.hpp>

using namespace nclf;

static void BM_QuasiDet(benchmark::State &state)
{
    int n = int(state.range(0));
    Sampler s(1);
    std::vector<std::vector<RingValue>> rows(n);
    for (auto &r : rows)
        for (int j = 0; j < n; j++)
            r.push_back(random_generic(s, 2, Backend::Rational));
    QMatrix a = QMatrix::from_rows(rows);
    for (auto _ : state)
        benchmark::DoNotOptimize(quasi_det(a, n - 1, n - 1));
}
BENCHMARK(BM_QuasiDet)->DenseRange(2, 5);

static void BM_StepVertices(benchmark::State &state)
{
    Sampler s(2);
    LeapfrogState st = random_state(s, Backend::Rational, int(state.range(0)), 6, Mode::Periodic);
    for (auto _ : state)
        benchmark::DoNotOptimize(step_vertices(st));
}
BENCHMARK(BM_StepVertices)->Arg(1)->Arg(2)->Arg(3);

static void BM_StepPQ(benchmark::State &state)
{
    Sampler s(3);
    PQCoords pq = pq_from_vertices(random_state(s, Backend::Rational, int(state.range(0)), 6, Mode::Periodic));
    for (auto _ : state)
        benchmark::DoNotOptimize(step_pq(pq));
}
BENCHMARK(BM_StepPQ)->Arg(1)->Arg(2)->Arg(3);

static void BM_FloatTrajectory(benchmark::State &state)
{
    Sampler s(4);
    LeapfrogState st0 = random_state(s, Backend::Float, 4, 16, Mode::Periodic);
    for (auto _ : state) {
        LeapfrogState st = st0;
        for (int i = 0; i < 10; i++)
            st = step_vertices(st);
        benchmark::DoNotOptimize(st);
    }
}
BENCHMARK(BM_FloatTrajectory);

static void BM_BiorthoFamily(benchmark::State &state)
{
    Sampler s(5);
    MomentWindow m = random_moments(s, Backend::Rational, 2, -14, 14);
    for (auto _ : state)
        benchmark::DoNotOptimize(build_family(m, 1, int(state.range(0))));
}
BENCHMARK(BM_BiorthoFamily)->Arg(2)->Arg(4);

static void BM_SpectralInvariants(benchmark::State &state)
{
    Sampler s(6);
    XYWeights xy = xy_weights(random_weights(s, Backend::Rational, 2, 3));
    for (auto _ : state)
        benchmark::DoNotOptimize(spectral_invariants(xy, int(state.range(0))));
}
BENCHMARK(BM_SpectralInvariants)->Arg(2)->Arg(6);

static void BM_BracketSuite(benchmark::State &state)
{
    for (auto _ : state)
        benchmark::DoNotOptimize(bracket_relation_suite(2, {2, 3, 1}));
}
BENCHMARK(BM_BracketSuite)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
