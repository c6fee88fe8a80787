#include <random>

#include <benchmark/benchmark.h>

#include "efinv/efinv.hpp"

using namespace efinv;

namespace {

ComplexMatrix random_matrix(Index m, Index n, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    ComplexMatrix a(m, n);
    for (Index j = 0; j < n; ++j)
        for (Index i = 0; i < m; ++i)
            a(i, j) = Complex(g(rng), g(rng));
    return a;
}

// n x n with rank n - n/4.
ComplexMatrix rank_deficient(Index n, std::uint64_t seed)
{
    const Index r = n - n / 4;
    return random_matrix(n, r, seed) * random_matrix(r, n, seed + 1);
}

// Square matrix of index 2: invertible block plus a nilpotent chain, rotated.
ComplexMatrix index_two(Index n, std::uint64_t seed)
{
    ComplexMatrix core = zeros(n, n);
    const Index c = n - 2;
    core.topLeftCorner(c, c) = random_matrix(c, c, seed) + 4.0 * identity(c);
    core(c, c + 1) = 1.0;
    const ComplexMatrix q = random_matrix(n, n, seed + 7).householderQr().householderQ();
    return q * core * q.adjoint();
}

void BM_Svd(benchmark::State& state)
{
    const ComplexMatrix a = random_matrix(state.range(0), state.range(0), 1);
    for (auto _ : state)
        benchmark::DoNotOptimize(svd(a));
}

void BM_MoorePenrose(benchmark::State& state)
{
    const ComplexMatrix a = rank_deficient(state.range(0), 2);
    for (auto _ : state)
        benchmark::DoNotOptimize(moore_penrose(a));
}

void BM_Drazin(benchmark::State& state)
{
    const ComplexMatrix a = index_two(state.range(0), 3);
    for (auto _ : state)
        benchmark::DoNotOptimize(drazin(a));
}

void BM_EfInverse(benchmark::State& state)
{
    const ComplexMatrix a = rank_deficient(state.range(0), 4);
    const ComplexMatrix p = moore_penrose(a);
    const ComplexMatrix e = p * a, f = a * p;
    for (auto _ : state)
        benchmark::DoNotOptimize(ef_inverse(a, e, f));
}

void BM_EfExists(benchmark::State& state)
{
    const ComplexMatrix a = rank_deficient(state.range(0), 5);
    const ComplexMatrix p = moore_penrose(a);
    const ComplexMatrix e = p * a, f = a * p;
    for (auto _ : state)
        benchmark::DoNotOptimize(ef_exists(a, e, f));
}

void BM_Catalog(benchmark::State& state)
{
    const ComplexMatrix a = index_two(state.range(0), 6);
    const InverseName name = all_inverse_names()[static_cast<std::size_t>(state.range(1))];
    state.SetLabel(std::string(canonical_name(name)));
    CatalogEntry entry{name, std::nullopt, std::nullopt, std::nullopt};
    if (needs_subspaces(name)) {
        const SvdFactorization f = power_svd(a, 2);
        entry.t = range_of(f);
        entry.s = nullspace_of(f);
    }
    if (needs_power(name))
        entry.m = 2;
    for (auto _ : state)
        benchmark::DoNotOptimize(named_inverse(a, entry));
}

} // namespace

BENCHMARK(BM_Svd)->RangeMultiplier(2)->Range(8, 128);
BENCHMARK(BM_MoorePenrose)->RangeMultiplier(2)->Range(8, 128);
BENCHMARK(BM_Drazin)->RangeMultiplier(2)->Range(8, 64);
BENCHMARK(BM_EfInverse)->RangeMultiplier(2)->Range(8, 128);
BENCHMARK(BM_EfExists)->RangeMultiplier(2)->Range(8, 64);
// GMP/MPG need index <= 1, so start at DMP.
BENCHMARK(BM_Catalog)->ArgsProduct({{32}, benchmark::CreateDenseRange(2, 20, 1)});
