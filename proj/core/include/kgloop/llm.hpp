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
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "kgloop/actionlang.hpp"
#include "kgloop/knowledge.hpp"
#include "kgloop/simulator.hpp"

namespace kgloop {

struct InContextExample {
  std::string task;
  std::string plan;
};

/// The worked "make coffee" example used when a domain supplies none.
const InContextExample& default_example();

struct PromptSpec {
  std::string task;
  std::vector<std::string> domain_objects;
  std::vector<std::string> action_set;
  InContextExample example = default_example();
};

/// Objects are the state-graph instance names; actions are the schema verbs.
PromptSpec make_prompt_spec(std::string task, const KnowledgeBase& kb,
                            const SchemaSet& schemas,
                            InContextExample example = default_example());

std::string build_initial_prompt(const PromptSpec& spec);

using Problem = std::variant<Mismatch, ExecError>;

/// One line naming the offending token or step.
std::string describe_problem(const Problem& problem);

std::string build_feedback_prompt(const ActionSequence& prior,
                                  const Problem& problem);

struct LlmReply {
  std::string text;
  std::size_t token_count = 0;
};

/// Number of whitespace-separated tokens.
std::size_t count_tokens(std::string_view text);

class LlmClient {
 public:
  virtual ~LlmClient() = default;
  virtual LlmReply call(const std::string& prompt) = 0;
};

/// Replays canned replies in call order, independent of prompt content.
class ScriptedClient final : public LlmClient {
 public:
  explicit ScriptedClient(std::vector<std::string> replies);

  LlmReply call(const std::string& prompt) override;

  std::size_t calls() const noexcept { return cursor_; }
  std::size_t remaining() const noexcept { return replies_.size() - cursor_; }
  const std::vector<std::string>& replies() const noexcept { return replies_; }

 private:
  std::vector<std::string> replies_;
  std::size_t cursor_ = 0;
};

/// Reply blocks separated by a line containing only `---`. Blank blocks are
/// skipped and surrounding blank lines trimmed.
std::vector<std::string> parse_script(std::string_view text);
std::vector<std::string> load_script(const std::filesystem::path& path);

/// OpenAI-style chat-completions endpoint.
struct RemoteConfig {
  /// e.g. http://localhost:8000/v1/chat/completions
  std::string endpoint;
  std::string model;
  std::string api_key;
  int timeout_seconds = 60;

  /// Reads KGLOOP_LLM_ENDPOINT, KGLOOP_LLM_MODEL and KGLOOP_LLM_API_KEY.
  static RemoteConfig from_env();
};

class RemoteClient final : public LlmClient {
 public:
  explicit RemoteClient(RemoteConfig config);
  LlmReply call(const std::string& prompt) override;

 private:
  RemoteConfig config_;
};

}  // namespace kgloop
