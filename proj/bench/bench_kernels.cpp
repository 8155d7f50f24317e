// Serial reference vs OpenMP kernels, plus the full planners. Arg = grid side.

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include "spnav/kernels.hpp"
#include "spnav/viterbi.hpp"

using namespace spnav;
using namespace spnav::kernels;

namespace {

std::vector<std::uint8_t> random_occupancy(int side) {
    std::mt19937_64 rng(1);
    std::vector<std::uint8_t> occ(static_cast<std::size_t>(side) * side);
    for (auto& o : occ) o = rng() % 20 == 0;
    return occ;
}

std::vector<GaussianTerm> random_terms(int side, int k) {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<GaussianTerm> terms(static_cast<std::size_t>(k));
    for (auto& g : terms) {
        g.mean = Vec2(side * 0.05 * u(rng), side * 0.05 * u(rng));
        g.precision = Mat2::Identity() * 2.0;
        g.log_norm = -1.0;
        g.log_weight = std::log(u(rng));
    }
    return terms;
}

std::vector<double> random_field(int side) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-10.0, 0.0);
    std::vector<double> f(static_cast<std::size_t>(side) * side);
    for (auto& v : f) v = rng() % 10 == 0 ? -std::numeric_limits<double>::infinity() : u(rng);
    return f;
}

template <auto Edt>
void BM_Edt(benchmark::State& st) {
    const int side = static_cast<int>(st.range(0));
    const auto occ = random_occupancy(side);
    std::vector<double> out(occ.size());
    for (auto _ : st) {
        Edt(occ, side, side, out);
        benchmark::DoNotOptimize(out.data());
    }
    st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(occ.size()));
}

template <auto Emission>
void BM_Emission(benchmark::State& st) {
    const int side = static_cast<int>(st.range(0));
    const GridGeometry geo{side, side, 0.05, Vec2(0, 0)};
    const std::vector<double> cost(static_cast<std::size_t>(side) * side, 0.8);
    const auto terms = random_terms(side, 10);
    std::vector<double> out(cost.size());
    for (auto _ : st) {
        Emission(geo, cost, terms, 0.0, out);
        benchmark::DoNotOptimize(out.data());
    }
    st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(cost.size()));
}

template <auto Sweep>
void BM_ValueSweep(benchmark::State& st) {
    const int side = static_cast<int>(st.range(0));
    const auto field = random_field(side);
    const std::vector<Offset> moves{{0, 0}, {0, 1}, {0, -1}, {-1, 0}, {1, 0}};
    std::vector<double> next(field.size(), 0.0), value(field.size());
    std::vector<std::uint8_t> policy(field.size());
    for (auto _ : st) {
        Sweep(field, side, side, moves, next, value, policy);
        benchmark::DoNotOptimize(value.data());
    }
    st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(field.size()));
}

void BM_Viterbi(benchmark::State& st) {
    const int side = static_cast<int>(st.range(0));
    const Exec exec = st.range(1) ? Exec::Parallel : Exec::Serial;
    const Field f{GridGeometry{side, side, 0.05, Vec2(0, 0)}, random_field(side)};
    Cell start{side / 2, side / 2};
    while (!std::isfinite(f.at(start))) ++start.col;
    for (auto _ : st) benchmark::DoNotOptimize(viterbi_plan(f, start, 200, ActionSet::von_neumann(), exec));
}

}  // namespace

BENCHMARK(BM_Edt<serial::squared_edt>)->Name("edt/serial")->Arg(128)->Arg(512);
BENCHMARK(BM_Edt<omp::squared_edt>)->Name("edt/omp")->Arg(128)->Arg(512);
BENCHMARK(BM_Emission<serial::emission>)->Name("emission/serial")->Arg(128)->Arg(512);
BENCHMARK(BM_Emission<omp::emission>)->Name("emission/omp")->Arg(128)->Arg(512);
BENCHMARK(BM_ValueSweep<serial::value_sweep>)->Name("value_sweep/serial")->Arg(128)->Arg(512);
BENCHMARK(BM_ValueSweep<omp::value_sweep>)->Name("value_sweep/omp")->Arg(128)->Arg(512);
BENCHMARK(BM_Viterbi)->Name("viterbi_T200")->Args({100, 0})->Args({100, 1})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
