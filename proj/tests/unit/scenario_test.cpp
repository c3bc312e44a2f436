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

#include "kgloop/batch.hpp"

#include <gtest/gtest.h>

#include <fstream>

#include "fixtures.hpp"
#include "kgloop/error.hpp"

namespace kgloop {
namespace {

TEST(Scenario, ResolvesDomainFile) {
  auto spec = load_scenario(testing::data_dir() / "onion" / "scenarios" / "onion.json");
  EXPECT_EQ(spec.id, "onion");
  EXPECT_EQ(spec.task, "slice the onion");
  EXPECT_EQ(spec.state_graph, testing::data_dir() / "onion" / "state.ttl");
  EXPECT_EQ(spec.f_max, 3u);
  EXPECT_EQ(spec.goal, (std::vector<std::string>{"onion sliced true"}));
}

TEST(Scenario, Rejections) {
  EXPECT_THROW(parse_scenario("{", "."), ConfigError);
  EXPECT_THROW(parse_scenario(R"({"task": "x", "script": "s.txt"})", "."),
               ConfigError);
  EXPECT_THROW(parse_scenario(R"({"script": "s.txt"})", "."), ConfigError);
}

TEST(Manifest, Rejections) {
  EXPECT_THROW(parse_manifest(R"({"scenarios": []})", "."), ConfigError);
  EXPECT_THROW(parse_manifest(R"({"scenarios": ["nope.json"]})", "."), ConfigError);
  EXPECT_THROW(parse_manifest(R"({"scenarios": ["a"], "configurations": ["X"]})", "."),
               Error);
}

TEST(Batch, CleaningCorpus) {
  auto result = run_batch(load_manifest(testing::data_dir() / "cleaning" /
                                        "manifest.json"));
  EXPECT_EQ(result.report.rows.size(), 36u);
  EXPECT_EQ(result.sessions.size(), 36u);
  for (const auto& s : result.sessions) {
    ASSERT_FALSE(s.stats_timeline.empty());
    for (std::size_t i = 1; i < s.stats_timeline.size(); ++i) {
      EXPECT_TRUE(s.stats_timeline[i - 1].dominated_by(s.stats_timeline[i]));
    }
  }
}

TEST(Batch, SingleScenarioSingleConfiguration) {
  RunManifest m;
  m.scenarios = {testing::data_dir() / "onion" / "scenarios" / "onion.json"};
  m.configurations = {Configuration::kLlmKgHuman};
  auto result = run_batch(m);
  ASSERT_EQ(result.report.rows.size(), 1u);
  EXPECT_TRUE(result.report.rows[0].success);
  EXPECT_EQ(result.report.rows[0].expanded, (std::vector<std::string>{"onion"}));
}

TEST(Batch, Deterministic) {
  auto m = load_manifest(testing::data_dir() / "cooking" / "manifest.json");
  auto a = run_batch(m);
  auto b = run_batch(m);
  EXPECT_EQ(a.report.render_text(), b.report.render_text());
  EXPECT_EQ(a.report.to_json(), b.report.to_json());
  ASSERT_EQ(a.sessions.size(), b.sessions.size());
  for (std::size_t i = 0; i < a.sessions.size(); ++i) {
    EXPECT_EQ(a.sessions[i].trace_jsonl, b.sessions[i].trace_jsonl);
    EXPECT_EQ(a.sessions[i].progress, b.sessions[i].progress);
  }
}

TEST(Batch, WritesOutputs) {
  RunManifest m;
  m.scenarios = {testing::data_dir() / "onion" / "scenarios" / "onion.json"};
  m.configurations = {Configuration::kLlmKg};
  auto dir = std::filesystem::temp_directory_path() / "kgloop_batch_test";
  std::filesystem::remove_all(dir);
  write_outputs(run_batch(m), dir);
  EXPECT_TRUE(std::filesystem::exists(dir / "report.txt"));
  EXPECT_TRUE(std::filesystem::exists(dir / "report.json"));
  EXPECT_TRUE(std::filesystem::exists(dir / "traces" / "onion__LLM_KG.jsonl"));
  EXPECT_TRUE(std::filesystem::exists(dir / "progress" / "onion__LLM_KG.txt"));
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace kgloop
