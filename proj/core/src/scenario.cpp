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

#include "kgloop/scenario.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "kgloop/error.hpp"

namespace kgloop {
namespace {

using nlohmann::json;

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_json(std::string_view text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(what + ": " + e.what());
  }
}

std::filesystem::path resolve(const std::filesystem::path& base,
                              const std::string& p) {
  std::filesystem::path path(p);
  return path.is_absolute() ? path : (base / path).lexically_normal();
}

std::string text_or_lines(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  std::string out;
  for (const auto& line : v) {
    if (!out.empty()) out += '\n';
    out += line.get<std::string>();
  }
  return out;
}

// Fields a domain file and a scenario file share.
void apply_domain_fields(const json& j, const std::filesystem::path& base,
                         ScenarioSpec& spec) {
  auto path_field = [&](const char* key, std::filesystem::path& out) {
    if (j.contains(key)) out = resolve(base, j.at(key).get<std::string>());
  };
  path_field("state_graph", spec.state_graph);
  path_field("attribute_graph", spec.attribute_graph);
  path_field("capability_map", spec.capability_map);
  path_field("schemas", spec.schemas);
  path_field("lexicon", spec.lexicon);
  if (j.contains("example")) {
    const auto& ex = j.at("example");
    spec.example = InContextExample{ex.at("task").get<std::string>(),
                                    text_or_lines(ex.at("plan"))};
  }
  if (j.contains("capacity")) spec.capacity = j.at("capacity").get<std::size_t>();
}

}  // namespace

ScenarioSpec parse_scenario(std::string_view json_text,
                            const std::filesystem::path& base_dir) {
  json j = parse_json(json_text, "scenario");
  ScenarioSpec spec;
  try {
    if (j.contains("domain")) {
      auto domain_path = resolve(base_dir, j.at("domain").get<std::string>());
      json d = parse_json(read_file(domain_path), domain_path.string());
      apply_domain_fields(d, domain_path.parent_path(), spec);
    }
    apply_domain_fields(j, base_dir, spec);
    spec.id = j.value("id", std::string{});
    spec.task = j.at("task").get<std::string>();
    spec.script = resolve(base_dir, j.at("script").get<std::string>());
    if (j.contains("oracle")) {
      spec.oracle = resolve(base_dir, j.at("oracle").get<std::string>());
    }
    if (j.contains("goal")) {
      spec.goal = j.at("goal").get<std::vector<std::string>>();
    }
    if (j.contains("configuration")) {
      spec.configuration =
          parse_configuration(j.at("configuration").get<std::string>());
    }
    spec.f_max = j.value("fmax", spec.f_max);
    spec.recipe = j.value("recipe", std::string{});
    if (j.contains("inject_exec_failure")) {
      const auto& f = j.at("inject_exec_failure");
      spec.fail_step = f.at("step").get<std::size_t>();
      spec.fail_times = f.value("times", std::size_t{1});
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("scenario: ") + e.what());
  }
  for (const auto* p : {&spec.state_graph, &spec.attribute_graph,
                        &spec.capability_map, &spec.schemas, &spec.lexicon}) {
    if (p->empty()) {
      throw ConfigError("scenario '" + spec.id +
                        "' is missing a knowledge-base or domain file");
    }
  }
  if (spec.f_max < 1) throw ConfigError("fmax must be at least 1");
  return spec;
}

ScenarioSpec load_scenario(const std::filesystem::path& path) {
  ScenarioSpec spec = parse_scenario(read_file(path), path.parent_path());
  if (spec.id.empty()) spec.id = path.stem().string();
  return spec;
}

ScenarioInputs load_inputs(const ScenarioSpec& spec) {
  ScenarioInputs in;
  in.spec = spec;
  in.kb = load_knowledge_base(spec.state_graph, spec.attribute_graph,
                              spec.capability_map);
  in.domain.schemas = load_schemas(spec.schemas);
  in.domain.lexicon = load_lexicon(spec.lexicon);
  if (spec.example) in.domain.example = *spec.example;
  in.script = load_script(spec.script);
  if (!spec.oracle.empty()) in.oracle = load_oracle(spec.oracle);
  in.goal = parse_goal(spec.goal);
  return in;
}

SessionConfig make_config(const ScenarioSpec& spec, Configuration c,
                          std::optional<std::size_t> f_max) {
  SessionConfig config;
  config.configuration = c;
  config.f_max = f_max.value_or(spec.f_max);
  config.goal = parse_goal(spec.goal);
  config.exec.capacity = spec.capacity;
  config.fail_step = spec.fail_step;
  config.fail_times = spec.fail_times;
  return config;
}

Session run_scenario(const ScenarioInputs& inputs, Configuration c,
                     LlmClient& client, std::optional<std::size_t> f_max,
                     const KnowledgeBase* kb) {
  Session session =
      Session::start(make_config(inputs.spec, c, f_max),
                     kb != nullptr ? *kb : inputs.kb, inputs.domain, client,
                     inputs.spec.task);
  OracleScript oracle = inputs.oracle;
  drive(session, oracle);
  return session;
}

}  // namespace kgloop
