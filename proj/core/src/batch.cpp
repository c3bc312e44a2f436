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

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "kgloop/error.hpp"

namespace kgloop {
namespace {

std::filesystem::path resolve(const std::filesystem::path& base,
                              const std::string& p) {
  std::filesystem::path path(p);
  return path.is_absolute() ? path : (base / path).lexically_normal();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << text;
}

std::vector<GraphStats> stats_timeline(const Session& s) {
  std::vector<GraphStats> out{s.initial_stats()};
  for (const auto& e : s.events()) {
    if (e.type != "expansion") continue;
    GraphStats g;
    for (const auto& [key, value] : e.fields) {
      if (key == "nodes_after") g.nodes = std::get<std::int64_t>(value);
      if (key == "edges_after") g.edges = std::get<std::int64_t>(value);
    }
    out.push_back(g);
  }
  return out;
}

}  // namespace

RunManifest parse_manifest(std::string_view json_text,
                           const std::filesystem::path& base_dir) {
  using nlohmann::json;
  RunManifest m;
  try {
    json j = json::parse(json_text);
    for (const auto& s : j.at("scenarios")) {
      m.scenarios.push_back(resolve(base_dir, s.get<std::string>()));
    }
    if (j.contains("configurations")) {
      m.configurations.clear();
      for (const auto& c : j.at("configurations")) {
        m.configurations.push_back(parse_configuration(c.get<std::string>()));
      }
    }
    if (j.contains("output_dir")) {
      m.output_dir = resolve(base_dir, j.at("output_dir").get<std::string>());
    }
    if (j.contains("fmax")) m.f_max = j.at("fmax").get<std::size_t>();
    if (j.contains("ground_truth")) {
      m.ground_truth = resolve(base_dir, j.at("ground_truth").get<std::string>());
    }
    m.carry_knowledge = j.value("carry_knowledge", true);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("manifest: ") + e.what());
  }
  if (m.scenarios.empty()) throw ConfigError("manifest lists no scenarios");
  if (m.configurations.empty()) {
    throw ConfigError("manifest lists no configurations");
  }
  for (const auto& p : m.scenarios) {
    if (!std::filesystem::exists(p)) {
      throw ConfigError("scenario file " + p.string() + " does not exist");
    }
  }
  return m;
}

RunManifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_manifest(ss.str(), path.parent_path());
}

BatchResult run_batch(const RunManifest& manifest) {
  std::optional<GroundTruth> gt;
  if (!manifest.ground_truth.empty()) {
    gt = load_ground_truth(manifest.ground_truth);
  }
  std::vector<ScenarioInputs> inputs;
  for (const auto& path : manifest.scenarios) {
    inputs.push_back(load_inputs(load_scenario(path)));
  }

  BatchResult result;
  std::vector<SessionRecord> rows;
  for (Configuration c : manifest.configurations) {
    std::vector<Expansion> carried;
    for (const auto& in : inputs) {
      KnowledgeBase kb = in.kb;
      if (manifest.carry_knowledge) {
        for (const auto& x : carried) {
          try {
            expand(kb, x);
          } catch (const Error&) {
            // Not applicable in this scenario's world.
          }
        }
      }
      ScriptedClient client(in.script);
      Session session = run_scenario(in, c, client, manifest.f_max, &kb);
      carried.insert(carried.end(), session.expansions().begin(),
                     session.expansions().end());
      rows.push_back(summarize(in.spec.id, session, in.domain.lexicon,
                               gt ? &*gt : nullptr, in.spec.recipe));
      SessionArtifacts a;
      a.id = in.spec.id;
      a.configuration = c;
      a.trace_jsonl = session.trace_jsonl();
      a.trace_summary = session.trace_summary();
      if (session.last_trace()) a.progress = render_progress(*session.last_trace());
      a.measured_plan = session.executed_plan() ? *session.executed_plan()
                                                : session.plan();
      a.replies = session.replies();
      a.stats_timeline = stats_timeline(session);
      result.sessions.push_back(std::move(a));
    }
  }
  result.report = build_report(std::move(rows));
  return result;
}

void write_outputs(const BatchResult& result, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir / "traces");
  std::filesystem::create_directories(dir / "progress");
  write_file(dir / "report.txt", result.report.render_text());
  write_file(dir / "report.json", result.report.to_json());
  for (const auto& s : result.sessions) {
    std::string stem = s.id + "__" + std::string(to_string(s.configuration));
    write_file(dir / "traces" / (stem + ".jsonl"), s.trace_jsonl);
    write_file(dir / "progress" / (stem + ".txt"), s.progress);
  }
}

}  // namespace kgloop
