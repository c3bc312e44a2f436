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

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <httplib.h>

#include "kgloop/batch.hpp"
#include "kgloop/error.hpp"
#include "kgloop/scenario.hpp"
#include "kgloop/simulator.hpp"
#include "service.hpp"

namespace {

struct RunOptions {
  std::vector<std::string> scenarios;
  std::string manifest;
  std::vector<std::string> configurations;
  std::optional<std::size_t> f_max;
  std::string out;
  bool no_carry = false;
  std::string llm = "scripted";
};

int internal_failures(const kgloop::CorpusReport& report) {
  int n = 0;
  for (const auto& r : report.rows) {
    if (r.failure_cause.rfind("internal_error", 0) == 0) ++n;
  }
  return n;
}

int run_remote(const RunOptions& opt, kgloop::Configuration c) {
  using namespace kgloop;
  RemoteClient client(RemoteConfig::from_env());
  int status = 0;
  for (const auto& path : opt.scenarios) {
    ScenarioInputs in = load_inputs(load_scenario(path));
    Session s = run_scenario(in, c, client, opt.f_max);
    std::cout << s.trace_summary();
    if (s.last_trace()) std::cout << render_progress(*s.last_trace());
    if (s.failure_cause().rfind("internal_error", 0) == 0) status = 1;
  }
  return status;
}

int run(const RunOptions& opt) {
  using namespace kgloop;
  RunManifest m;
  if (!opt.manifest.empty()) {
    m = load_manifest(opt.manifest);
  } else {
    for (const auto& s : opt.scenarios) m.scenarios.emplace_back(s);
    if (m.scenarios.empty()) throw ConfigError("give --scenario or --manifest");
  }
  if (!opt.configurations.empty()) {
    m.configurations.clear();
    for (const auto& c : opt.configurations) {
      m.configurations.push_back(parse_configuration(c));
    }
  }
  if (opt.f_max) m.f_max = opt.f_max;
  if (!opt.out.empty()) m.output_dir = opt.out;
  if (opt.no_carry) m.carry_knowledge = false;

  if (opt.llm == "remote") {
    if (m.configurations.size() != 1) {
      throw ConfigError("--llm remote needs exactly one --config");
    }
    RunOptions remote = opt;
    remote.scenarios.clear();
    for (const auto& p : m.scenarios) remote.scenarios.push_back(p.string());
    return run_remote(remote, m.configurations.front());
  }

  BatchResult result = run_batch(m);
  if (!m.output_dir.empty()) write_outputs(result, m.output_dir);
  std::cout << result.report.render_text();
  return internal_failures(result.report) > 0 ? 1 : 0;
}

int serve(const std::string& bind, const std::string& root) {
  auto colon = bind.rfind(':');
  if (colon == std::string::npos) {
    throw kgloop::ConfigError("--bind expects host:port");
  }
  std::string host = bind.substr(0, colon);
  int port = std::stoi(bind.substr(colon + 1));
  kgloop::service::Service service(root);
  httplib::Server server;
  service.mount(server);
  std::cerr << "listening on " << host << ":" << port << "\n";
  if (!server.listen(host, port)) {
    std::cerr << "kgloop: cannot bind " << bind << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Plan, refine and execute household tasks against a knowledge graph"};
  app.require_subcommand(1);

  RunOptions opt;
  auto* run_cmd = app.add_subcommand("run", "Run scenarios headlessly and print the corpus report");
  auto* scenario_opt =
      run_cmd->add_option("-s,--scenario", opt.scenarios, "Scenario JSON file (repeatable)")
          ->check(CLI::ExistingFile);
  run_cmd->add_option("-m,--manifest", opt.manifest, "Run manifest JSON file")
      ->check(CLI::ExistingFile)
      ->excludes(scenario_opt);
  run_cmd->add_option("-c,--config", opt.configurations,
                      "LLM_only, LLM_KG or LLM_KG_Human (repeatable; default all)");
  run_cmd->add_option("--fmax", opt.f_max, "Re-prompt budget override")
      ->check(CLI::PositiveNumber);
  run_cmd->add_option("-o,--out", opt.out, "Directory for report, traces and progress lines");
  run_cmd->add_flag("--no-carry", opt.no_carry,
                    "Do not reuse knowledge learned by earlier scenarios");
  run_cmd->add_option("--llm", opt.llm,
                      "scripted (default) or remote; remote reads KGLOOP_LLM_ENDPOINT, "
                      "KGLOOP_LLM_MODEL and KGLOOP_LLM_API_KEY")
      ->check(CLI::IsMember({"scripted", "remote"}));

  std::string bind = "127.0.0.1:8080";
  std::string root = ".";
  auto* serve_cmd = app.add_subcommand("serve", "Host interactive sessions over HTTP");
  serve_cmd->add_option("-b,--bind", bind, "host:port to listen on")->capture_default_str();
  serve_cmd->add_option("--root", root, "Directory scenario paths resolve against")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);
  try {
    if (*run_cmd) return run(opt);
    if (*serve_cmd) return serve(bind, root);
  } catch (const kgloop::Error& e) {
    std::cerr << "kgloop: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "kgloop: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
