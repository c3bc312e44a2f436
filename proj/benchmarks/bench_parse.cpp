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

#include <fstream>
#include <sstream>

#include "bench_data.hpp"
#include "kgloop/actionlang.hpp"
#include "kgloop/turtle.hpp"

namespace kgloop::bench {
namespace {

std::string read(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void BM_ParseTurtle(benchmark::State& state) {
  std::string text = read(domain_dir("cooking") / "state.ttl");
  for (auto _ : state) benchmark::DoNotOptimize(parse_turtle(text));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_ParseTurtle);

void BM_SerializeTurtle(benchmark::State& state) {
  Graph g = load_turtle(domain_dir("cooking") / "attributes.ttl");
  for (auto _ : state) benchmark::DoNotOptimize(serialize_turtle(g));
}
BENCHMARK(BM_SerializeTurtle);

void BM_ParsePlan(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(parse_plan(kOmelette));
}
BENCHMARK(BM_ParsePlan);

void BM_ParseSchemas(benchmark::State& state) {
  std::string text = read(domain_dir("cooking") / "schemas.json");
  for (auto _ : state) benchmark::DoNotOptimize(parse_schemas(text));
}
BENCHMARK(BM_ParseSchemas);

}  // namespace
}  // namespace kgloop::bench
