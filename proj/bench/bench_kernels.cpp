// Serial reference vs OpenMP versions of the hot paths.

#include <benchmark/benchmark.h>

#include <vector>

#include "supercon/cholesky.hpp"
#include "supercon/closed_forms.hpp"
#include "supercon/experiments.hpp"
#include "supercon/interp.hpp"

using namespace supercon;

namespace {

const KernelSpec kKernel(2);

std::vector<double> samples(const NodeSet& nodes) {
    std::vector<double> v;
    for (double x : nodes.points()) v.push_back(f_exact(x));
    return v;
}

template <auto Assemble>
void BM_Gram(benchmark::State& state) {
    const NodeSet nodes = equidistant_nodes(1.2, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(Assemble(kKernel, nodes));
}

template <auto Factor>
void BM_Cholesky(benchmark::State& state) {
    const NodeSet nodes = equidistant_nodes(1.2, static_cast<std::size_t>(state.range(0)));
    const Eigen::MatrixXd a = assemble_gram(kKernel, nodes);
    for (auto _ : state) benchmark::DoNotOptimize(Factor(a, 1e-13));
}

template <auto Evaluate>
void BM_Evaluate(benchmark::State& state) {
    const NodeSet nodes = equidistant_nodes(1.2, 161);
    const Interpolant s = interpolate(kKernel, nodes, samples(nodes));
    const std::vector<double> grid = uniform_grid(1.2, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(Evaluate(s, grid));
}

template <auto Study>
void BM_RateStudy(benchmark::State& state) {
    RateStudyConfig c;
    c.node_counts = {11, 21, 41, 81, 161, 321};
    c.grid_size = 3211;
    const RealFunction f = [](double x) { return f_exact(x); };
    for (auto _ : state) benchmark::DoNotOptimize(Study(c, f, std::nullopt));
}

}  // namespace

BENCHMARK(BM_Gram<serial::assemble_gram>)->Name("gram/serial")->Arg(161)->Arg(641)->Arg(1281);
BENCHMARK(BM_Gram<assemble_gram>)->Name("gram/omp")->Arg(161)->Arg(641)->Arg(1281);
BENCHMARK(BM_Cholesky<serial::cholesky_factor>)->Name("cholesky/serial")->Arg(161)->Arg(641)->Arg(1281);
BENCHMARK(BM_Cholesky<cholesky_factor>)->Name("cholesky/omp")->Arg(161)->Arg(641)->Arg(1281);
BENCHMARK(BM_Evaluate<serial::evaluate>)->Name("evaluate/serial")->Arg(2001)->Arg(20001);
BENCHMARK(BM_Evaluate<evaluate>)->Name("evaluate/omp")->Arg(2001)->Arg(20001);
BENCHMARK(BM_RateStudy<serial::run_rate_study>)->Name("rate_study/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RateStudy<run_rate_study>)->Name("rate_study/omp")->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
