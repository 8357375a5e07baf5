#include <benchmark/benchmark.h>

#include "lassospec/metric_graph.hpp"
#include "lassospec/secular.hpp"
#include "lassospec/spectrum.hpp"
#include "lassospec/surgery.hpp"

namespace {

using namespace lassospec;

MetricGraph star_graph(int arms) {
    std::set<std::string> vertices{"c"};
    std::vector<Edge> edges;
    std::set<std::string> dirichlet;
    for (int i = 0; i < arms; ++i) {
        const std::string v = "v" + std::to_string(i);
        vertices.insert(v);
        edges.push_back({"e" + std::to_string(i), "c", v,
                         EdgeLength::real(1.0 + 0.1 * static_cast<double>(i))});
        if (i % 2 == 0) dirichlet.insert(v);
    }
    return MetricGraph::create(std::move(vertices), std::move(edges), std::move(dirichlet));
}

void BM_SigmaMin(benchmark::State& state) {
    const MetricGraph g = star_graph(static_cast<int>(state.range(0)));
    double k = 1.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sigma_min(g, k));
        k += 1e-4;  // avoid benchmarking a cached value pattern
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SigmaMin)->RangeMultiplier(2)->Range(2, 32)->Complexity();

void BM_FindSpectrumInterval(benchmark::State& state) {
    const MetricGraph g = MetricGraph::create(
        {"a", "b"}, {{"e", "a", "b", EdgeLength::pi_multiple(1.0)}}, {"a", "b"});
    for (auto _ : state) {
        SolverOptions opts;
        opts.k_max = static_cast<double>(state.range(0));
        benchmark::DoNotOptimize(find_spectrum(g, opts));
    }
}
BENCHMARK(BM_FindSpectrumInterval)->Arg(5)->Arg(10)->Arg(20);

void BM_FindSpectrumLassoTree(benchmark::State& state) {
    const LassoTreeConstruction c =
        construct_lasso_tree(static_cast<int>(state.range(0)), static_cast<int>(state.range(0)),
                             static_cast<int>(state.range(0)));
    for (auto _ : state) {
        SolverOptions opts;
        opts.k_max = 1.2;
        benchmark::DoNotOptimize(find_spectrum(c.graph, opts));
    }
}
BENCHMARK(BM_FindSpectrumLassoTree)->DenseRange(1, 3);

void BM_SuppressAndContract(benchmark::State& state) {
    const LassoTreeConstruction c = construct_lasso_tree(2, 4, 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(contract_cycles(suppress_degree_two(c.graph)));
    }
}
BENCHMARK(BM_SuppressAndContract);

}  // namespace

BENCHMARK_MAIN();
