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

#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kgloop/knowledge.hpp"
#include "kgloop/session.hpp"

namespace kgloop {

/// A scenario file after path resolution. Shared domain fields may come from
/// a separate domain file named by the scenario's "domain" key; fields in
/// the scenario itself take precedence.
struct ScenarioSpec {
  std::string id;
  std::string task;
  std::filesystem::path state_graph;
  std::filesystem::path attribute_graph;
  std::filesystem::path capability_map;
  std::filesystem::path schemas;
  std::filesystem::path lexicon;
  std::filesystem::path script;
  /// Empty when the scenario has no scripted human.
  std::filesystem::path oracle;
  std::optional<InContextExample> example;
  std::vector<std::string> goal;
  std::optional<Configuration> configuration;
  std::size_t f_max = 3;
  std::size_t capacity = 2;
  /// Ground-truth recipe id for ingredient overlap.
  std::string recipe;
  std::size_t fail_step = 0;
  std::size_t fail_times = 0;
};

/// Relative paths resolve against `base_dir`.
ScenarioSpec parse_scenario(std::string_view json_text,
                            const std::filesystem::path& base_dir);
ScenarioSpec load_scenario(const std::filesystem::path& path);

/// Everything a session needs, read from disk.
struct ScenarioInputs {
  ScenarioSpec spec;
  KnowledgeBase kb;
  Domain domain;
  std::vector<std::string> script;
  OracleScript oracle;
  GoalSpec goal;
};

ScenarioInputs load_inputs(const ScenarioSpec& spec);

/// `f_max` overrides the scenario's budget when set.
SessionConfig make_config(const ScenarioSpec& spec, Configuration c,
                          std::optional<std::size_t> f_max = std::nullopt);

/// Runs one scenario headlessly under configuration `c`. `kb` replaces the
/// loaded knowledge base when given.
Session run_scenario(const ScenarioInputs& inputs, Configuration c,
                     LlmClient& client,
                     std::optional<std::size_t> f_max = std::nullopt,
                     const KnowledgeBase* kb = nullptr);

}  // namespace kgloop
