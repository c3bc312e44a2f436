// Copyright 2026 The kgloop Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "bench_data.hpp"
#include "kgloop/batch.hpp"

namespace kgloop::bench {
namespace {

void BM_Scenario(benchmark::State& state, const char* domain, const char* id) {
  auto in = load_inputs(load_scenario(domain_dir(domain) / "scenarios" /
                                      (std::string(id) + ".json")));
  for (auto _ : state) {
    ScriptedClient llm(in.script);
    Session s = run_scenario(in, Configuration::kLlmKgHuman, llm);
    benchmark::DoNotOptimize(s.phase());
  }
}
BENCHMARK_CAPTURE(BM_Scenario, feasible, "cooking", "trace_feasible_first_try");
BENCHMARK_CAPTURE(BM_Scenario, human, "cooking", "trace_unknown_object_human");
BENCHMARK_CAPTURE(BM_Scenario, elicitation, "onion", "onion");

void BM_CleaningCorpus(benchmark::State& state) {
  auto manifest = load_manifest(domain_dir("cleaning") / "manifest.json");
  for (auto _ : state) benchmark::DoNotOptimize(run_batch(manifest));
  state.SetItemsProcessed(state.iterations() * 36);
}
BENCHMARK(BM_CleaningCorpus)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace kgloop::bench
