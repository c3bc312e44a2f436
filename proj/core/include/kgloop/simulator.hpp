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
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kgloop/actionlang.hpp"
#include "kgloop/knowledge.hpp"
#include "kgloop/triplestore.hpp"

namespace kgloop {

struct ExecError {
  enum class Kind {
    kPreconditionFailed,
    kUnknownVerbAtExecution,
    kMissingInstance,
    /// Raised by the session when a completed run leaves the goal unmet.
    kGoalNotSatisfied,
  };
  Kind kind = Kind::kPreconditionFailed;
  /// 1-based step number; 0 for kGoalNotSatisfied.
  std::size_t step = 0;
  std::string reason;

  friend bool operator==(const ExecError&, const ExecError&) = default;
};

std::string_view to_string(ExecError::Kind kind);

struct StepOutcome {
  Action action;
  bool applied = false;
  std::string reason;
};

struct ProgressEntry {
  /// 0 is the initial state.
  std::size_t step = 0;
  std::string location;
  /// State flags of the instance (true ones rendered).
  std::map<std::string, bool> flags;
};

/// Location/state timeline of one tracked object.
struct ProgressLine {
  std::string object;
  std::vector<ProgressEntry> timeline;
};

struct ExecutionTrace {
  /// One entry per attempted step; stops at the first failure.
  std::vector<StepOutcome> steps;
  /// State graph after the run. Equal to the input state when halted.
  Graph final_state;
  /// In order of first appearance in the plan.
  std::vector<ProgressLine> progress;
  bool halted = false;

  const ProgressLine* progress_for(std::string_view object) const;
};

struct ExecOptions {
  /// Maximum number of items the agent carries at once.
  std::size_t capacity = 2;
  /// Force this 1-based step to fail with precondition_failed.
  std::optional<std::size_t> fail_at_step;
};

struct ExecResult {
  ExecutionTrace trace;
  std::optional<ExecError> error;
};

/// Runs the plan against a working copy of the state graph.
///
/// Each step checks the verb, resolves arguments to instances, checks the
/// schema's capabilities and preconditions, then applies its effects. The
/// first failing step halts the run and all of its effects are discarded.
/// Held items are located at ex:agent.
ExecResult execute(const ActionSequence& seq, const KnowledgeBase& kb,
                   const SchemaSet& schemas, const ExecOptions& options = {});

/// Triples that must hold in the final state.
struct GoalSpec {
  std::vector<Triple> required;
  bool empty() const noexcept { return required.empty(); }
};

/// Parses `instance predicate value` lines; value is true/false or an
/// instance name.
GoalSpec parse_goal(const std::vector<std::string>& lines);
std::string render_goal_item(const Triple& t);

/// False for halted traces.
bool check_goal(const ExecutionTrace& trace, const GoalSpec& goal);

/// Fixed-width table: a header row and one row per tracked object; cell i
/// is the object's location (plus true flags) after step i.
std::string render_progress(const ExecutionTrace& trace);

}  // namespace kgloop
