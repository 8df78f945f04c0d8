#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "curveflow/kernels.hpp"

using namespace curveflow;

namespace {

struct Fixture {
    ProblemSpec p;
    std::vector<double> values;
    Derivatives d;
    std::vector<NodeEval> out;

    Fixture(int n, int M)
        : p(SpaceformConfig(SpaceKind::Euclid, 0.5, 2.0),
            n == 1 ? CurvatureFunction::mean(1) : CurvatureFunction::quotient(n, n, 1),
            PrescribedData::power_law(n, 3.0, SphereFunction::from_expression("1 + 0.2*cos(2*theta)"), n),
            FlowMode::Expanding) {
        const DomainKind dom = n == 1 ? DomainKind::FullCircle : DomainKind::Latitude;
        values = SupportProfile::sample(dom, n, M, [](double t) { return 1 + 0.1 * std::cos(2 * t); }).values();
        d = differentiate(dom, values);
        out.resize(values.size());
    }
};

void BM_nodes_reference(benchmark::State& state) {
    Fixture f(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
    for (auto _ : state) {
        reference::evaluate_nodes(f.p, f.values, f.d, f.out);
        benchmark::DoNotOptimize(f.out.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(1));
}

void BM_nodes_parallel(benchmark::State& state) {
    Fixture f(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
    for (auto _ : state) {
        evaluate_nodes(f.p, f.values, f.d, f.out, Exec::Parallel);
        benchmark::DoNotOptimize(f.out.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(1));
    state.counters["threads"] = max_threads();
}

void grid_sizes(benchmark::internal::Benchmark* b) {
    for (int n : {1, 3})
        for (int M : {64, 256, 1024, 4096}) b->Args({n, M});
}

}  // namespace

BENCHMARK(BM_nodes_reference)->Apply(grid_sizes);
BENCHMARK(BM_nodes_parallel)->Apply(grid_sizes);

BENCHMARK_MAIN();
