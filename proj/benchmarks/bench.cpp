#include <benchmark/benchmark.h>

#include <numeric>
#include <random>

#include "ppm/decompose.hpp"
#include "ppm/match.hpp"
#include "ppm/pattern_graph.hpp"
#include "ppm/permutation.hpp"
#include "ppm/reduction.hpp"
#include "ppm/twirl.hpp"

namespace {

ppm::Permutation random_perm(std::mt19937& rng, int n) {
    std::vector<int> v(static_cast<size_t>(n));
    std::iota(v.begin(), v.end(), 1);
    std::shuffle(v.begin(), v.end(), rng);
    return ppm::Permutation(std::move(v));
}

// random member of Av(321): interleave two increasing value streams
ppm::Permutation random_av321(std::mt19937& rng, int n) {
    std::vector<int> a, b;
    for (int v = 1; v <= n; ++v) (rng() & 1u ? a : b).push_back(v);
    std::vector<int> out;
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        const bool take_a = j == b.size() || (i < a.size() && (rng() & 1u));
        out.push_back(take_a ? a[i++] : b[j++]);
    }
    return ppm::Permutation(std::move(out));
}

ppm::CnfFormula sample_formula(int v, int c) {
    std::mt19937 rng(1234);
    ppm::CnfFormula f;
    f.num_vars = v;
    std::vector<int> vars(static_cast<size_t>(v));
    std::iota(vars.begin(), vars.end(), 1);
    for (int t = 0; t < c; ++t) {
        std::shuffle(vars.begin(), vars.end(), rng);
        ppm::Clause cl;
        for (int i = 0; i < 3; ++i)
            cl.lits[static_cast<size_t>(i)] = {vars[static_cast<size_t>(i)], (rng() & 1u) != 0};
        f.clauses.push_back(cl);
    }
    return f;
}

void BM_contains_bruteforce(benchmark::State& state) {
    std::mt19937 rng(42);
    const auto pat = random_perm(rng, static_cast<int>(state.range(0)));
    const auto text = random_perm(rng, static_cast<int>(state.range(1)));
    for (auto _ : state) benchmark::DoNotOptimize(ppm::contains_bruteforce(pat, text));
}
BENCHMARK(BM_contains_bruteforce)->Args({6, 20})->Args({8, 14});

void BM_match_backtrack(benchmark::State& state) {
    std::mt19937 rng(42);
    const auto pat = random_perm(rng, static_cast<int>(state.range(0)));
    const auto text = random_perm(rng, static_cast<int>(state.range(1)));
    for (auto _ : state) benchmark::DoNotOptimize(ppm::match_backtrack(pat, text));
}
BENCHMARK(BM_match_backtrack)->Args({6, 20})->Args({8, 14});

void BM_separator_dp(benchmark::State& state) {
    std::mt19937 rng(43);
    const auto pat = random_av321(rng, static_cast<int>(state.range(0)));
    const auto text = random_perm(rng, static_cast<int>(state.range(1)));
    const auto order = ppm::stair_order(ppm::stair_decompose(pat));
    for (auto _ : state) benchmark::DoNotOptimize(ppm::match_separator_dp(pat, order, text));
}
BENCHMARK(BM_separator_dp)->Args({6, 20})->Args({8, 14});

void BM_stair_decompose(benchmark::State& state) {
    std::mt19937 rng(44);
    const auto p = random_av321(rng, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(ppm::stair_decompose(p));
}
BENCHMARK(BM_stair_decompose)->Arg(12)->Arg(24);

void BM_twirl_roundtrip(benchmark::State& state) {
    const auto track = ppm::k_track(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto tw = ppm::twirl(track);
        benchmark::DoNotOptimize(ppm::untwirl(tw.out));
    }
}
BENCHMARK(BM_twirl_roundtrip)->Arg(8)->Arg(16);

void BM_build_instance(benchmark::State& state) {
    const auto f = sample_formula(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
    for (auto _ : state) benchmark::DoNotOptimize(ppm::build_instance(f));
}
BENCHMARK(BM_build_instance)->Args({3, 2})->Args({5, 4});

void BM_decide_via_assignments(benchmark::State& state) {
    const auto f = sample_formula(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
    const auto inst = ppm::build_instance(f);
    for (auto _ : state) benchmark::DoNotOptimize(ppm::decide_via_assignments(inst));
}
BENCHMARK(BM_decide_via_assignments)->Args({3, 2})->Args({4, 3});

}  // namespace

BENCHMARK_MAIN();
