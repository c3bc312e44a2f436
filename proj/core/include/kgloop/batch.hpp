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

#include "kgloop/metrics.hpp"
#include "kgloop/scenario.hpp"

namespace kgloop {

struct RunManifest {
  std::vector<std::filesystem::path> scenarios;
  std::vector<Configuration> configurations = all_configurations();
  std::filesystem::path output_dir;
  std::optional<std::size_t> f_max;
  std::filesystem::path ground_truth;
  /// Re-apply earlier expansions of the same configuration to later
  /// scenarios. World state always resets per scenario.
  bool carry_knowledge = true;
};

/// Relative paths resolve against `base_dir`. Throws ConfigError.
RunManifest parse_manifest(std::string_view json_text,
                           const std::filesystem::path& base_dir);
RunManifest load_manifest(const std::filesystem::path& path);

struct SessionArtifacts {
  std::string id;
  Configuration configuration = Configuration::kLlmKgHuman;
  std::string trace_jsonl;
  std::string trace_summary;
  std::string progress;
  /// The plan overlap is measured on: the last one executed, else the last
  /// one proposed.
  ActionSequence measured_plan;
  std::vector<std::string> replies;
  /// Knowledge-base stats after each expansion, starting with the initial.
  std::vector<GraphStats> stats_timeline;
};

struct BatchResult {
  CorpusReport report;
  std::vector<SessionArtifacts> sessions;
};

/// Runs every scenario under every configuration, configuration-major.
BatchResult run_batch(const RunManifest& manifest);

/// Writes report.txt, report.json, traces/<id>__<config>.jsonl and
/// progress/<id>__<config>.txt under `dir`.
void write_outputs(const BatchResult& result, const std::filesystem::path& dir);

}  // namespace kgloop
