#include "vem/generators.hpp"
#include "vem/quadrature.hpp"
#include "vem/system.hpp"

#include <benchmark/benchmark.h>

using namespace vem;

namespace {

const PolytopalMesh& csm1()
{
    static const PolytopalMesh m = make_csm(1);
    return m;
}

const PolytopalMesh& cubes()
{
    static const PolytopalMesh m = make_cube_grid(3, 3, 3);
    return m;
}

// Local projector construction for the whole mesh; range(0) is the approach
// index, range(1) the degree.
void BM_Discretize2D(benchmark::State& state)
{
    static const char* names[] = {"Mon", "Ortho", "Inrt"};
    const ApproachConfig a = ApproachConfig::parse(names[state.range(0)]);
    const int k = static_cast<int>(state.range(1));
    state.SetLabel(names[state.range(0)]);
    for (auto _ : state) benchmark::DoNotOptimize(discretize(csm1(), a, k));
}
BENCHMARK(BM_Discretize2D)->ArgsProduct({{0, 1, 2}, {1, 2, 4, 6}})->Unit(benchmark::kMillisecond);

void BM_Discretize3D(benchmark::State& state)
{
    static const char* names[] = {"Mon", "Ortho", "Inrt-B", "Inrt-F", "Inrt-BF"};
    const ApproachConfig a = ApproachConfig::parse(names[state.range(0)]);
    const int k = static_cast<int>(state.range(1));
    state.SetLabel(names[state.range(0)]);
    for (auto _ : state) benchmark::DoNotOptimize(discretize(cubes(), a, k));
}
BENCHMARK(BM_Discretize3D)->ArgsProduct({{0, 1, 2, 3, 4}, {1, 2, 3}})->Unit(benchmark::kMillisecond);

void BM_PolygonRule(benchmark::State& state)
{
    Mat P(2, 6);
    P << 0.0, 1.0, 1.5, 1.1, 0.2, -0.4, 0.0, -0.1, 0.6, 1.3, 1.4, 0.7;
    const int order = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(polygon_rule(P, order));
}
BENCHMARK(BM_PolygonRule)->DenseRange(2, 16, 7);

} // namespace

BENCHMARK_MAIN();
