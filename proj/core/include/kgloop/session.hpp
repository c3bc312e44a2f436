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
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "kgloop/actionlang.hpp"
#include "kgloop/knowledge.hpp"
#include "kgloop/lexicon.hpp"
#include "kgloop/llm.hpp"
#include "kgloop/refine.hpp"
#include "kgloop/simulator.hpp"

namespace kgloop {

enum class Configuration { kLlmOnly, kLlmKg, kLlmKgHuman };

/// "LLM_only", "LLM_KG", "LLM_KG_Human".
std::string_view to_string(Configuration c);
Configuration parse_configuration(std::string_view name);
const std::vector<Configuration>& all_configurations();

enum class Phase {
  kPlanning,
  kRefining,
  kExecuting,
  kAwaitingHuman,
  kDone,
  kFailed
};

std::string_view to_string(Phase p);

struct SessionConfig {
  std::size_t f_max = 3;
  Configuration configuration = Configuration::kLlmKgHuman;
  GoalSpec goal;
  /// Carrying capacity; `fail_at_step` here is ignored.
  ExecOptions exec;
  /// Forces step `fail_step` to fail in the first `fail_times` executions.
  std::size_t fail_step = 0;
  std::size_t fail_times = 0;
  /// Upper bound on state transitions before the session fails.
  std::size_t max_transitions = 256;
};

/// Static inputs shared by every session of a domain.
struct Domain {
  SchemaSet schemas;
  Lexicon lexicon;
  InContextExample example = default_example();
};

struct HumanQuery {
  enum class Kind { kExistenceCheck, kAttributeElicitation };
  enum class SlotType { kNone, kBool, kWord };

  Kind kind = Kind::kExistenceCheck;
  /// The unresolved token, or the entity being described.
  std::string token;
  /// "type", a capability predicate, "location" or a state flag.
  std::string slot;
  SlotType slot_type = SlotType::kNone;
  /// The mismatch that triggered the existence check.
  std::optional<Mismatch> context;

  friend bool operator==(const HumanQuery&, const HumanQuery&) = default;
};

std::string_view to_string(HumanQuery::Kind k);
std::string_view to_string(HumanQuery::SlotType t);

struct HumanAnswer {
  enum class Kind { kCorrection, kDeniesExistence, kConfirmsNew, kValue };

  Kind kind = Kind::kConfirmsNew;
  /// The replacement word, or the slot value.
  std::string value;

  static HumanAnswer correction(std::string word) {
    return {Kind::kCorrection, std::move(word)};
  }
  static HumanAnswer denies_existence() { return {Kind::kDeniesExistence, {}}; }
  static HumanAnswer confirms_new() { return {Kind::kConfirmsNew, {}}; }
  static HumanAnswer slot_value(std::string v) {
    return {Kind::kValue, std::move(v)};
  }

  friend bool operator==(const HumanAnswer&, const HumanAnswer&) = default;
};

/// "correction", "denies_existence", "confirms_new", "value".
std::string_view to_string(HumanAnswer::Kind k);
HumanAnswer::Kind parse_answer_kind(std::string_view name);

using EventValue = std::variant<std::string, std::int64_t, bool>;

/// One trace-log entry. `summary` is the compact form used in oracle traces.
struct Event {
  std::size_t seq = 0;
  std::string type;
  std::string summary;
  std::vector<std::pair<std::string, EventValue>> fields;

  /// Single-line JSON object.
  std::string to_json() const;

  friend bool operator==(const Event&, const Event&) = default;
};

struct Snapshot {
  std::string task;
  Configuration configuration = Configuration::kLlmKgHuman;
  Phase phase = Phase::kPlanning;
  std::size_t f = 0;
  std::size_t f_max = 0;
  ActionSequence plan;
  std::vector<Mismatch> unresolved;
  std::optional<ExecError> exec_error;
  std::optional<HumanQuery> pending_query;
  GraphStats initial_stats;
  GraphStats stats;
  std::size_t tokens = 0;
  std::vector<std::string> replies;
  std::string failure_cause;
  std::vector<Event> events;

  friend bool operator==(const Snapshot&, const Snapshot&) = default;
};

/// One run of the plan/refine/execute feedback loop for a single task.
///
/// Each call to step() performs exactly one transition. The session pauses
/// in AwaitingHuman until submit_answer() is called. Library errors raised
/// inside a transition end the session in Failed with a recorded cause.
class Session {
 public:
  /// Makes the initial LLM call and, outside LLM_only, the first refinement.
  /// `client` must outlive the session.
  static Session start(SessionConfig config, KnowledgeBase kb, Domain domain,
                       LlmClient& client, std::string task);

  void step();
  /// Throws InvalidAnswer when the answer does not fit the pending query or
  /// the session is not awaiting one; the session is left unchanged.
  void submit_answer(const HumanAnswer& answer);
  /// Ends the session in Failed.
  void abort(std::string cause);

  /// Steps until Done, Failed or AwaitingHuman.
  void run();

  Phase phase() const noexcept { return phase_; }
  bool terminal() const noexcept {
    return phase_ == Phase::kDone || phase_ == Phase::kFailed;
  }
  bool succeeded() const noexcept { return phase_ == Phase::kDone; }
  std::size_t feedback_count() const noexcept { return f_; }
  std::size_t tokens() const noexcept { return tokens_; }
  const std::string& task() const noexcept { return task_; }
  const SessionConfig& config() const noexcept { return config_; }
  const KnowledgeBase& kb() const noexcept { return kb_; }
  const ActionSequence& plan() const noexcept { return plan_; }
  const std::vector<Mismatch>& unresolved() const noexcept {
    return unresolved_;
  }
  const std::optional<HumanQuery>& pending_query() const noexcept {
    return pending_;
  }
  const std::vector<Event>& events() const noexcept { return events_; }
  /// Reply texts in the order they were consumed.
  const std::vector<std::string>& replies() const noexcept { return replies_; }
  const std::vector<Expansion>& expansions() const noexcept {
    return expansions_;
  }
  const std::optional<ExecutionTrace>& last_trace() const noexcept {
    return last_trace_;
  }
  /// Plan that was last sent to the simulator, if any.
  const std::optional<ActionSequence>& executed_plan() const noexcept {
    return executed_plan_;
  }
  const std::string& failure_cause() const noexcept { return failure_cause_; }
  GraphStats initial_stats() const noexcept { return initial_stats_; }

  Snapshot snapshot() const;
  /// Line-delimited JSON, one event per line.
  std::string trace_jsonl() const;
  /// One summary per line.
  std::string trace_summary() const;

 private:
  Session(SessionConfig config, KnowledgeBase kb, Domain domain,
          LlmClient& client, std::string task);

  struct Elicitation {
    std::string entity;
    std::vector<std::pair<std::string, HumanQuery::SlotType>> slots;
    std::size_t next = 0;
    std::vector<std::pair<std::string, std::string>> answers;
  };

  void emit(std::string type, std::string summary,
            std::vector<std::pair<std::string, EventValue>> fields = {});
  void set_phase(Phase p);
  void fail(std::string cause);
  bool accept_reply(const std::string& prompt, bool feedback);
  void do_planning();
  void do_refining();
  void do_executing();
  void after_refine();
  void ask_existence();
  void ask_next_slot();
  void finish_elicitation();
  void patch_plan(ActionSequence seq);
  bool refine_enabled() const noexcept {
    return config_.configuration != Configuration::kLlmOnly;
  }
  bool human_enabled() const noexcept {
    return config_.configuration == Configuration::kLlmKgHuman;
  }

  SessionConfig config_;
  KnowledgeBase kb_;
  Domain domain_;
  LlmClient* client_;
  std::string task_;

  Phase phase_ = Phase::kPlanning;
  std::size_t f_ = 0;
  std::size_t transitions_ = 0;
  std::size_t executions_ = 0;
  std::size_t tokens_ = 0;
  bool after_human_ = false;
  ActionSequence plan_;
  std::vector<Mismatch> unresolved_;
  std::optional<ExecError> exec_error_;
  std::optional<HumanQuery> pending_;
  std::optional<Elicitation> elicitation_;
  std::optional<ExecutionTrace> last_trace_;
  std::optional<ActionSequence> executed_plan_;
  std::vector<Event> events_;
  std::vector<std::string> replies_;
  std::vector<Expansion> expansions_;
  GraphStats initial_stats_;
  std::string failure_cause_;
};

/// Ordered canned human answers for headless runs.
class OracleScript {
 public:
  OracleScript() = default;
  explicit OracleScript(std::vector<HumanAnswer> answers)
      : answers_(std::move(answers)) {}

  std::optional<HumanAnswer> next();
  std::size_t consumed() const noexcept { return cursor_; }
  std::size_t size() const noexcept { return answers_.size(); }

 private:
  std::vector<HumanAnswer> answers_;
  std::size_t cursor_ = 0;
};

/// Lines `correction <word>`, `denies_existence`, `confirms_new`,
/// `value <v>`; `#` starts a comment.
OracleScript parse_oracle(std::string_view text);
OracleScript load_oracle(const std::filesystem::path& path);

/// Runs to a terminal phase, answering queries from `oracle`. A missing or
/// rejected answer fails the session instead of blocking.
void drive(Session& session, OracleScript& oracle);

}  // namespace kgloop
