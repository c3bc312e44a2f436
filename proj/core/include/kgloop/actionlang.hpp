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
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace kgloop {

/// One abstract action such as `crack(egg, pan)`.
///
/// The argument count may disagree with the verb's schema; that surfaces
/// later as a mismatch rather than at construction.
struct Action {
  std::string verb;
  std::vector<std::string> args;

  friend bool operator==(const Action&, const Action&) = default;
};

enum class PlanSource { kInitialLlm, kFeedbackLlm, kRefined, kHumanPatched };

std::string_view to_string(PlanSource source);

/// An ordered plan. Step i (0-based in `steps`) is rendered as number i + 1.
struct ActionSequence {
  std::vector<Action> steps;
  PlanSource source = PlanSource::kInitialLlm;
  /// Parser diagnostics, e.g. duplicate or out-of-order step numbers.
  std::vector<std::string> warnings;

  std::size_t size() const noexcept { return steps.size(); }
  bool empty() const noexcept { return steps.empty(); }
  /// Plans compare by steps only.
  friend bool operator==(const ActionSequence& a, const ActionSequence& b) {
    return a.steps == b.steps;
  }
};

/// Extracts every line of the form `N. verb(arg, ...)`, ignoring prose,
/// lowercasing tokens and renumbering densely from 1. Throws EmptyPlan when
/// no line matches.
ActionSequence parse_plan(std::string_view text,
                          PlanSource source = PlanSource::kInitialLlm);

/// `1. verb(a, b)` lines joined by '\n' (no trailing newline).
std::string render_plan(const ActionSequence& seq);
std::string render_action(const Action& action);

// ---------------------------------------------------------------------------
// Schemas

/// Reference to the instance a condition or effect talks about: an action
/// argument (`$0`), the agent, or a named instance such as `stove`.
struct SlotRef {
  enum class Kind { kArg, kAgent, kNamed } kind = Kind::kArg;
  std::size_t arg = 0;
  std::string name;

  static SlotRef parse(std::string_view text);
  std::string str() const;
  friend bool operator==(const SlotRef&, const SlotRef&) = default;
};

/// Value side of a state pattern: a boolean flag or an instance reference.
using StateValue = std::variant<bool, SlotRef>;

/// `target.pred == value` (or != when negated) over the state graph.
struct StateCondition {
  SlotRef target;
  std::string predicate;
  StateValue value;
  bool negate = false;
};

/// The agent holds some instance whose class has `capability`.
struct HoldingCapability {
  std::string capability;
};

/// The agent holds fewer items than its capacity.
struct HandsFree {};

using Precondition = std::variant<StateCondition, HoldingCapability, HandsFree>;

/// `target.pred := value`.
struct Effect {
  SlotRef target;
  std::string predicate;
  StateValue value;
};

struct CapabilityRequirement {
  std::size_t arg = 0;
  std::string capability;
};

struct ActionSchema {
  std::string verb;
  std::size_t arity = 0;
  std::vector<CapabilityRequirement> required_capabilities;
  std::vector<Precondition> preconditions;
  std::vector<Effect> effects;
  std::string description;
};

/// Immutable verb -> schema table.
class SchemaSet {
 public:
  SchemaSet() = default;
  /// Throws DuplicateVerb or MalformedSchema.
  explicit SchemaSet(std::vector<ActionSchema> schemas);

  const ActionSchema* find(std::string_view verb) const;
  bool contains(std::string_view verb) const { return find(verb) != nullptr; }
  /// Verbs in file order.
  std::vector<std::string> verbs() const;
  const std::vector<ActionSchema>& all() const noexcept { return schemas_; }
  std::size_t size() const noexcept { return schemas_.size(); }
  bool empty() const noexcept { return schemas_.empty(); }

  /// Every capability predicate named by a requirement or a holding
  /// precondition, sorted and deduplicated.
  std::vector<std::string> capability_vocabulary() const;

 private:
  std::vector<ActionSchema> schemas_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

/// Parses the JSON schema document (see docs/formats.md). An empty or
/// whitespace-only document yields an empty set.
SchemaSet parse_schemas(std::string_view text);
SchemaSet load_schemas(const std::filesystem::path& path);

}  // namespace kgloop
