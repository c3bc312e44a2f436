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
#include "kgloop/refine.hpp"
#include "kgloop/simulator.hpp"

namespace kgloop::bench {
namespace {

struct Cooking {
  KnowledgeBase kb = cooking_kb();
  SchemaSet schemas = load_schemas(domain_dir("cooking") / "schemas.json");
  Lexicon lexicon = load_lexicon(domain_dir("cooking") / "lexicon.txt");
};

const Cooking& cooking() {
  static const Cooking c;
  return c;
}

void BM_DetectFeasible(benchmark::State& state) {
  const auto& c = cooking();
  auto seq = parse_plan(kOmelette);
  for (auto _ : state) {
    benchmark::DoNotOptimize(detect_mismatches(seq, c.kb, c.schemas));
  }
}
BENCHMARK(BM_DetectFeasible);

void BM_RefineRewriting(benchmark::State& state) {
  const auto& c = cooking();
  auto seq = parse_plan(
      "1. pick_up(egg)\n2. crack(egg, skillet)\n3. saute(egg, skillet)\n"
      "4. add(scallion, saucepan)\n5. serve(egg, plate)");
  for (auto _ : state) {
    benchmark::DoNotOptimize(refine_sequence(seq, c.kb, c.lexicon, c.schemas));
  }
}
BENCHMARK(BM_RefineRewriting);

void BM_Execute(benchmark::State& state) {
  const auto& c = cooking();
  auto seq = parse_plan(kOmelette);
  for (auto _ : state) benchmark::DoNotOptimize(execute(seq, c.kb, c.schemas));
}
BENCHMARK(BM_Execute);

void BM_EntityExists(benchmark::State& state) {
  const auto& c = cooking();
  for (auto _ : state) {
    benchmark::DoNotOptimize(entity_exists(c.kb, "tomato"));
    benchmark::DoNotOptimize(entity_exists(c.kb, "skillet"));
  }
}
BENCHMARK(BM_EntityExists);

}  // namespace
}  // namespace kgloop::bench
