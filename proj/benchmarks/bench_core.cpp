#include <benchmark/benchmark.h>

#include <memory>
#include <random>

#include "commcalc/magnus.hpp"
#include "commcalc/milnor.hpp"
#include "commcalc/nilpotent.hpp"
#include "commcalc/subgroups.hpp"
#include "commcalc/words.hpp"

using namespace commcalc;

namespace {

Word sampleWord(int rank, int length, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> gen(1, rank);
  std::uniform_int_distribution<int> sign(0, 1);
  std::vector<Letter> letters;
  for (int i = 0; i < length; ++i) letters.push_back({gen(rng), sign(rng) ? 1L : -1L});
  return Word(rank, letters);
}

void BM_Expand(benchmark::State& state) {
  const Word w = sampleWord(2, static_cast<int>(state.range(0)), 1);
  const int bound = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(expand(w, bound));
}
BENCHMARK(BM_Expand)->Args({16, 6})->Args({64, 6})->Args({256, 6})->Args({64, 8});

void BM_NormalForm(benchmark::State& state) {
  const int q = static_cast<int>(state.range(0));
  NilpotentContext ctx(2, q);
  const Word w = sampleWord(2, 24, 2);
  for (auto _ : state) benchmark::DoNotOptimize(ctx.normalForm(w));
}
BENCHMARK(BM_NormalForm)->Arg(4)->Arg(6)->Arg(7);

void BM_ContextSetup(benchmark::State& state) {
  const int rank = static_cast<int>(state.range(0));
  const int q = static_cast<int>(state.range(1));
  for (auto _ : state) {
    NilpotentContext ctx(rank, q);
    benchmark::DoNotOptimize(ctx.dimension());
  }
}
BENCHMARK(BM_ContextSetup)->Args({2, 6})->Args({3, 5})->Unit(benchmark::kMillisecond);

void BM_CloseSubgroup(benchmark::State& state) {
  auto ctx = std::make_shared<const NilpotentContext>(2, static_cast<int>(state.range(0)));
  const std::vector<Word> gens{parseWord("[a,a^b]", 2), parseWord("[b,b^a]", 2)};
  for (auto _ : state) benchmark::DoNotOptimize(closeSubgroup(gens, ctx, true).pivots().size());
}
BENCHMARK(BM_CloseSubgroup)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_Scheme(benchmark::State& state) {
  auto ctx = std::make_shared<const NilpotentContext>(2, 6);
  auto scheme = GeneratorScheme::parse("delta:1");
  scheme.length = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(buildScheme(scheme, ctx).pivots().size());
}
BENCHMARK(BM_Scheme)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_MuBar(benchmark::State& state) {
  const LinkPresentation lp(3, 6, {parseWord("[b,c]*[[a,b],c]", 3), parseWord("[c,a]", 3), parseWord("[a,b]^c", 3)});
  const int length = static_cast<int>(state.range(0));
  const auto indices = multiIndices(3, length);
  for (auto _ : state)
    for (const auto& idx : indices) benchmark::DoNotOptimize(mu(lp, idx));
}
BENCHMARK(BM_MuBar)->Arg(3)->Arg(5);

}  // namespace

BENCHMARK_MAIN();
