#include <benchmark/benchmark.h>

#include "graft/bench.hpp"
#include "graft/graph.hpp"
#include "graft/rng.hpp"
#include "graft/scope.hpp"
#include "graft/statemachine.hpp"

namespace {

graft::graph::DependencyGraph random_graph(int nodes, int edges, std::uint64_t seed) {
  graft::Rng rng(seed);
  graft::graph::DependencyGraph g;
  for (int i = 0; i < nodes; ++i) g.add_component();
  for (int e = 0; e < edges; ++e) g.add_dependency(rng.below(nodes), rng.below(nodes));
  return g;
}

void BM_KernelScc(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto g = random_graph(n, 3 * n, 7);
  for (auto _ : state) {
    auto partition = graft::graph::scc(g);
    benchmark::DoNotOptimize(partition);
  }
}
BENCHMARK(BM_KernelScc)->Arg(100)->Arg(1000)->Arg(10000);

void BM_SmDirectScc(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto machine = graft::sm::parse_state_machine(
      graft::bench::generate_state_machine_text(n, 3.0 / n, 11), "bench.sm");
  for (auto _ : state) {
    auto partition = graft::sm::direct_scc(machine);
    benchmark::DoNotOptimize(partition);
  }
}
BENCHMARK(BM_SmDirectScc)->Arg(1000)->Arg(10000);

void BM_SmOverlayBuildAndScc(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto machine = graft::sm::parse_state_machine(
      graft::bench::generate_state_machine_text(n, 3.0 / n, 11), "bench.sm");
  for (auto _ : state) {
    machine.reset_overlay_cache();
    auto partition = graft::graph::scc(machine.dependency_graph());
    benchmark::DoNotOptimize(partition);
  }
}
BENCHMARK(BM_SmOverlayBuildAndScc)->Arg(1000)->Arg(10000);

void BM_Shadowing(benchmark::State& state) {
  const int scopes = static_cast<int>(state.range(0));
  graft::Rng rng(13);
  graft::scope::ScopeTree tree;
  for (int i = 1; i < scopes; ++i) {
    const int parent = rng.below(tree.scope_count());
    const int scope = tree.add_scope(parent, "class");
    for (int d = 0; d < 3; ++d) {
      tree.add_declaration(scope, "v" + std::to_string(rng.below(8)),
                           graft::SourceRef{graft::FrontendKind::MiniJava, "v",
                                            graft::Span{"bench.java", i, d + 1, i, d + 1}});
    }
  }
  for (auto _ : state) {
    tree.reset_analysis_cache();
    benchmark::DoNotOptimize(tree.variable_shadowings());
  }
}
BENCHMARK(BM_Shadowing)->Arg(100)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
