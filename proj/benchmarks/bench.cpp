#include <benchmark/benchmark.h>

#include "vmorse/engine.hpp"
#include "vmorse/persist.hpp"

#ifndef VMORSE_SOURCE_DIR
#define VMORSE_SOURCE_DIR "."
#endif

using namespace vm;

namespace {

Morsification seed(const char* name) {
  return load_seed(std::string(VMORSE_SOURCE_DIR) + "/seeds/" + name + ".seed");
}

void BM_CanonicalKey(benchmark::State& st) {
  Morsification s = seed("x10_1");
  for (auto _ : st) benchmark::DoNotOptimize(canonical_key(s, Gauge::greedy));
}
BENCHMARK(BM_CanonicalKey);

void BM_ClassNeighbors(benchmark::State& st) {
  RuleConfig c;
  Morsification s = canonical_form(seed("x10_3"), c.gauge);
  std::vector<Morsification> out;
  for (auto _ : st) {
    out.clear();
    class_neighbors(s, c, true, out);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_ClassNeighbors);

void BM_ComponentOf7200(benchmark::State& st) {
  RuleConfig c;
  c.mode = Mode::restricted;
  Morsification s = seed("x10_3");
  for (auto _ : st) benchmark::DoNotOptimize(component_of(s, c).card);
  st.SetItemsProcessed(st.iterations() * 7200);
}
BENCHMARK(BM_ComponentOf7200)->Unit(benchmark::kMillisecond);

void BM_TruncatedRun(benchmark::State& st) {
  Budget b;
  b.max_states = 50000;
  RunOptions o;
  o.threads = static_cast<int>(st.range(0));
  Morsification s = seed("x10_3");
  for (auto _ : st) benchmark::DoNotOptimize(enumerate(s, RuleConfig{}, b, o).total());
  st.SetItemsProcessed(st.iterations() * b.max_states);
}
BENCHMARK(BM_TruncatedRun)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
