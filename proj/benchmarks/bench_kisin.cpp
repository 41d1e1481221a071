#include <benchmark/benchmark.h>

#include "kisin/hermite.hpp"
#include "kisin/hom.hpp"
#include "kisin/maxmin.hpp"
#include "kisin/random.hpp"
#include "kisin/simple.hpp"

using namespace kisin;

static void BM_FieldMul(benchmark::State& state) {
    auto k = Field::make(FieldParams::standard(3, static_cast<int>(state.range(0))));
    Elem acc = 1;
    Elem a = k->size() - 1;
    for (auto _ : state) {
        acc = k->mul(acc, a) + 1;
        if (acc >= k->size()) acc = 1;
        benchmark::DoNotOptimize(acc);
    }
}
BENCHMARK(BM_FieldMul)->Arg(1)->Arg(2)->Arg(4);

static void BM_Hnf(benchmark::State& state) {
    Rng rng(7);
    auto k = Field::prime(3);
    int d = static_cast<int>(state.range(0));
    PhiModule m = random_valid_module(rng, k, 1, 4, d, 2);
    for (auto _ : state) benchmark::DoNotOptimize(hnf_lattice(m.frob()));
}
BENCHMARK(BM_Hnf)->DenseRange(2, 4);

static void BM_MaxFixpoint(benchmark::State& state) {
    Rng rng(11);
    PhiModule m = random_valid_module(rng, Field::prime(2), 1, static_cast<int>(state.range(0)), 2);
    ExtremalOptions o;
    o.method = ExtremalMethod::Fixpoint;
    o.verify = false;
    for (auto _ : state) benchmark::DoNotOptimize(max_r(m, o));
}
BENCHMARK(BM_MaxFixpoint)->DenseRange(1, 4);

static void BM_Census(benchmark::State& state) {
    Rng rng(13);
    PhiModule m = random_valid_module(rng, Field::prime(2), 1, static_cast<int>(state.range(0)), 2);
    CensusOptions o;
    o.method = state.range(1) ? CensusMethod::Exhaustive : CensusMethod::Walk;
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_fr(m, o));
}
BENCHMARK(BM_Census)->ArgsProduct({{1, 2, 3}, {0, 1}});

static void BM_ClosedForm(benchmark::State& state) {
    SimpleSeq s(3, 1, 1, 3, {3, 1, 0});
    for (auto _ : state) benchmark::DoNotOptimize(max_closed_form(s));
}
BENCHMARK(BM_ClosedForm);

static void BM_HomSpace(benchmark::State& state) {
    Rng rng(17);
    auto k = Field::prime(2);
    PhiModule a = random_valid_module(rng, k, 1, 2, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(hom_space(a, a));
}
BENCHMARK(BM_HomSpace)->DenseRange(1, 3);

BENCHMARK_MAIN();
