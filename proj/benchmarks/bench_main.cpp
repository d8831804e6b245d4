#include <benchmark/benchmark.h>

#include <random>

#include "wallindex/charclasses.hpp"
#include "wallindex/cylinder.hpp"
#include "wallindex/dirac.hpp"
#include "wallindex/eta.hpp"
#include "wallindex/fields.hpp"
#include "wallindex/rsa.hpp"

using namespace wallindex;

namespace {

WallData random_wall(int dim, int points, int rank, bool frame) {
    const Grid g = Grid::torus(dim, points);
    std::mt19937_64 rng(42);
    WallData w = WallData::trivial(g, rank);
    w.a_minus = random_lie_form(g, 1, ValueType::gauge(rank), rng, 1, 0.3);
    w.gauge_jump = random_lie_form(g, 1, ValueType::gauge(rank), rng, 1, 0.3);
    if (frame) {
        w.gamma_minus = random_lie_form(g, 1, ValueType::frame(dim), rng, 1, 0.3);
        w.gamma_jump = random_lie_form(g, 1, ValueType::frame(dim), rng, 1, 0.3);
    }
    return w;
}

void BM_WedgeTwoForms(benchmark::State& state) {
    const Grid g = Grid::torus(4, static_cast<int>(state.range(0)));
    std::mt19937_64 rng(1);
    const Form a = random_lie_form(g, 2, ValueType::gauge(2), rng);
    const Form b = random_lie_form(g, 2, ValueType::gauge(2), rng);
    for (auto _ : state) benchmark::DoNotOptimize(wedge(a, b));
}
BENCHMARK(BM_WedgeTwoForms)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_ExteriorDerivative(benchmark::State& state) {
    const Grid g = Grid::torus(4, static_cast<int>(state.range(0)));
    std::mt19937_64 rng(2);
    const Form a = random_lie_form(g, 1, ValueType::gauge(2), rng);
    for (auto _ : state) benchmark::DoNotOptimize(ext_d(a));
}
BENCHMARK(BM_ExteriorDerivative)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_ChernTransgression(benchmark::State& state) {
    const Grid g = Grid::torus(4, static_cast<int>(state.range(0)));
    std::mt19937_64 rng(3);
    const Form a0 = random_lie_form(g, 1, ValueType::gauge(2), rng);
    const Form a1 = random_lie_form(g, 1, ValueType::gauge(2), rng);
    const auto ch = InvariantPolynomial::chern_character();
    for (auto _ : state) benchmark::DoNotOptimize(transgression(ch, a1, a0));
}
BENCHMARK(BM_ChernTransgression)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_BulkIntegral(benchmark::State& state) {
    const WallData w = random_wall(4, static_cast<int>(state.range(0)), 2, true);
    for (auto _ : state) benchmark::DoNotOptimize(bulk_pontryagin_integral(w));
}
BENCHMARK(BM_BulkIntegral)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_WallIntegrand(benchmark::State& state) {
    const WallData w = random_wall(4, static_cast<int>(state.range(0)), 2, true);
    for (auto _ : state) benchmark::DoNotOptimize(generalized_rsa(w));
}
BENCHMARK(BM_WallIntegrand)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_TwoCollar(benchmark::State& state) {
    const WallData w = random_wall(4, 8, 2, true);
    for (auto _ : state) benchmark::DoNotOptimize(two_cylinder_rsa(w));
}
BENCHMARK(BM_TwoCollar)->Unit(benchmark::kMillisecond);

void BM_DiracSpectrum(benchmark::State& state) {
    WallData w = random_wall(2, static_cast<int>(state.range(0)), 1, false);
    w.winding = 1;
    const DiracOperator d = build_dirac(w);
    SpectrumOptions opt;
    opt.method = state.range(1) == 0 ? EigenMethod::singular_values : EigenMethod::hermitian;
    for (auto _ : state) benchmark::DoNotOptimize(spectrum(d, opt));
    state.SetLabel(to_string(opt.method));
}
BENCHMARK(BM_DiracSpectrum)->Args({16, 0})->Args({24, 0})->Args({24, 1})->Unit(benchmark::kMillisecond);

void BM_CircleEta(benchmark::State& state) {
    const CircleProfile p = CircleProfile::constant(0.3);
    for (auto _ : state) benchmark::DoNotOptimize(eta_circle_spectral(p));
}
BENCHMARK(BM_CircleEta)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
