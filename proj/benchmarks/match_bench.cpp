#include "xregex/xregex.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace xregex;

MatchGraph random_graph(Rng& rng, std::size_t n, double density) {
  std::bernoulli_distribution coin(density);
  MatchGraph g(n);
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t j = i; j <= n; ++j)
      if (coin(rng)) g.add_edge(i, j);
  return g;
}

void BM_Concat(benchmark::State& state) {
  Rng rng(7);
  const auto n = static_cast<std::size_t>(state.range(0));
  const MatchGraph g = random_graph(rng, n, 0.1);
  const MatchGraph f = random_graph(rng, n, 0.1);
  for (auto _ : state) benchmark::DoNotOptimize(concat(g, f));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Concat)->RangeMultiplier(2)->Range(64, 1024)->Complexity();

void BM_Star(benchmark::State& state) {
  Rng rng(11);
  const auto n = static_cast<std::size_t>(state.range(0));
  MatchGraph g(n);
  for (std::size_t i = 0; i < n; ++i) g.add_edge(i, i + 1);
  for (auto _ : state) benchmark::DoNotOptimize(star(g));
}
BENCHMARK(BM_Star)->RangeMultiplier(2)->Range(64, 1024);

void BM_BuildMatchGraph(benchmark::State& state) {
  Rng rng(3);
  const Ast ast = parse("(a|b)*abb(a|c)*");
  const Tnfa a = build_tnfa(ast);
  const std::string text = random_text(rng, static_cast<std::size_t>(state.range(0)), "abc");
  const ThompsonSimulator sim;
  for (auto _ : state)
    benchmark::DoNotOptimize(build_match_graph(a, a.start(), a.accept(), text, sim));
}
BENCHMARK(BM_BuildMatchGraph)->RangeMultiplier(2)->Range(32, 256);

// Random instance at the given text length: m = 400, k = 1.
struct Instance {
  Ast ast;
  std::string text;
};

Instance make_instance(std::size_t n) {
  Rng rng(2024);
  AstShape shape;
  shape.nodes = 400;
  shape.extended = 1;
  shape.symbols = "abc";
  Instance inst{random_ast(rng, shape), ""};
  inst.text = random_text(rng, n, shape.symbols);
  return inst;
}

void BM_ClassicDp(benchmark::State& state) {
  const Instance inst = make_instance(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(dp_is_match(inst.ast, inst.text));
}
BENCHMARK(BM_ClassicDp)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_Clustered(benchmark::State& state) {
  const Instance inst = make_instance(static_cast<std::size_t>(state.range(0)));
  const ClusteredPattern pattern(inst.ast);
  const ThompsonSimulator thompson;
  const SuffixParallelSimulator parallel;
  const TnfaSimulator& sim = state.range(2) ? static_cast<const TnfaSimulator&>(parallel) : thompson;
  const auto mode = state.range(1) ? TraversalMode::HeavyPath : TraversalMode::NaiveBottomUp;
  for (auto _ : state) benchmark::DoNotOptimize(match_clustered(pattern, inst.text, sim, mode));
}
BENCHMARK(BM_Clustered)
    ->ArgsProduct({{64, 128, 256}, {0, 1}, {0, 1}})
    ->ArgNames({"n", "heavy", "parallel"})
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
