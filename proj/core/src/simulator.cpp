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

#include "kgloop/simulator.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "kgloop/error.hpp"

namespace kgloop {

std::string_view to_string(ExecError::Kind kind) {
  switch (kind) {
    case ExecError::Kind::kPreconditionFailed: return "precondition_failed";
    case ExecError::Kind::kUnknownVerbAtExecution:
      return "unknown_verb_at_execution";
    case ExecError::Kind::kMissingInstance: return "missing_instance";
    case ExecError::Kind::kGoalNotSatisfied: return "goal_not_satisfied";
  }
  return "unknown";
}

const ProgressLine* ExecutionTrace::progress_for(
    std::string_view object) const {
  for (const auto& line : progress) {
    if (line.object == object) return &line;
  }
  return nullptr;
}

namespace {

struct StepFailure {
  ExecError::Kind kind;
  std::string reason;
};

class Executor {
 public:
  Executor(const KnowledgeBase& kb, const SchemaSet& schemas,
           const ExecOptions& options)
      : kb_(kb), schemas_(schemas), options_(options), work_(kb.state) {
    for (const auto& [cap, flag] : kb.capability_states) flags_.insert(flag);
  }

  ExecResult run(const ActionSequence& seq) {
    ExecResult result;
    track_objects(seq);
    record(0);
    for (std::size_t i = 0; i < seq.steps.size(); ++i) {
      const Action& action = seq.steps[i];
      StepOutcome outcome{action, false, {}};
      auto failure = apply(action, i + 1);
      if (failure) {
        outcome.reason = failure->reason;
        result.trace.steps.push_back(std::move(outcome));
        result.error = ExecError{failure->kind, i + 1, failure->reason};
        result.trace.halted = true;
        break;
      }
      outcome.applied = true;
      result.trace.steps.push_back(std::move(outcome));
      record(i + 1);
    }
    result.trace.final_state = result.error ? kb_.state : std::move(work_);
    result.trace.progress = std::move(lines_);
    return result;
  }

 private:
  void track_objects(const ActionSequence& seq) {
    std::set<Term> seen;
    for (const auto& action : seq.steps) {
      const ActionSchema* schema = schemas_.find(action.verb);
      if (schema == nullptr || schema->arity != action.args.size()) continue;
      for (const auto& effect : schema->effects) {
        if (effect.target.kind != SlotRef::Kind::kArg) continue;
        auto inst = instance_for(kb_, action.args[effect.target.arg]);
        if (!inst || !seen.insert(*inst).second) continue;
        tracked_.push_back(*inst);
        lines_.push_back(ProgressLine{name_of(kb_, *inst), {}});
      }
    }
  }

  void record(std::size_t step) {
    for (std::size_t i = 0; i < tracked_.size(); ++i) {
      ProgressEntry entry;
      entry.step = step;
      if (auto loc = work_.object(tracked_[i], vocab::obj_location())) {
        entry.location = loc->is_iri() ? std::string(loc->local()) : loc->value();
      }
      for (const auto& t : work_.about(tracked_[i])) {
        if (t.object.is_bool() && flags_.contains(t.predicate.local())) {
          entry.flags.emplace(std::string(t.predicate.local()),
                              t.object.as_bool());
        }
      }
      lines_[i].timeline.push_back(std::move(entry));
    }
  }

  std::optional<Term> resolve(const SlotRef& ref,
                              const std::vector<Term>& args) const {
    switch (ref.kind) {
      case SlotRef::Kind::kArg: return args.at(ref.arg);
      case SlotRef::Kind::kAgent: return instance_for(kb_, "agent");
      case SlotRef::Kind::kNamed: return instance_for(kb_, ref.name);
    }
    return std::nullopt;
  }

  std::vector<Term> held(const Term& agent) const {
    std::vector<Term> out;
    for (const auto& t : work_.match(std::nullopt, vocab::obj_location(),
                                     agent)) {
      out.push_back(t.subject);
    }
    return out;
  }

  std::string display(const Term& t) const { return name_of(kb_, t); }

  std::optional<StepFailure> apply(const Action& action, std::size_t step) {
    using K = ExecError::Kind;
    if (options_.fail_at_step && *options_.fail_at_step == step) {
      return StepFailure{K::kPreconditionFailed, "injected failure"};
    }
    const ActionSchema* schema = schemas_.find(action.verb);
    if (schema == nullptr) {
      return StepFailure{K::kUnknownVerbAtExecution,
                         "unknown verb '" + action.verb + "'"};
    }
    if (schema->arity != action.args.size()) {
      return StepFailure{K::kUnknownVerbAtExecution,
                         "'" + action.verb + "' takes " +
                             std::to_string(schema->arity) +
                             " argument(s), got " +
                             std::to_string(action.args.size())};
    }
    std::vector<Term> args;
    for (const auto& token : action.args) {
      auto inst = instance_for(kb_, token);
      if (!inst) {
        return StepFailure{K::kMissingInstance,
                           "no instance of '" + token + "'"};
      }
      args.push_back(*inst);
    }
    for (const auto& req : schema->required_capabilities) {
      if (!capability(kb_, args[req.arg], req.capability)) {
        return StepFailure{K::kPreconditionFailed,
                           display(args[req.arg]) + " is not " +
                               req.capability};
      }
    }
    auto agent = instance_for(kb_, "agent");
    for (const auto& pre : schema->preconditions) {
      if (auto f = check(pre, args, agent)) return f;
    }
    for (const auto& effect : schema->effects) {
      auto target = resolve(effect.target, args);
      if (!target) {
        return StepFailure{K::kMissingInstance,
                           "no instance of '" + effect.target.str() + "'"};
      }
      Term value = Term::boolean(false);
      if (const bool* b = std::get_if<bool>(&effect.value)) {
        value = Term::boolean(*b);
      } else {
        auto ref = resolve(std::get<SlotRef>(effect.value), args);
        if (!ref) {
          return StepFailure{K::kMissingInstance,
                             "no instance of '" +
                                 std::get<SlotRef>(effect.value).str() + "'"};
        }
        value = *ref;
      }
      work_.set(*target, vocab::ex(effect.predicate), value);
    }
    return std::nullopt;
  }

  std::optional<StepFailure> check(const Precondition& pre,
                                   const std::vector<Term>& args,
                                   const std::optional<Term>& agent) const {
    using K = ExecError::Kind;
    if (std::holds_alternative<HandsFree>(pre)) {
      if (!agent) return StepFailure{K::kMissingInstance, "no agent instance"};
      if (held(*agent).size() >= options_.capacity) {
        return StepFailure{K::kPreconditionFailed,
                           "hands full (capacity " +
                               std::to_string(options_.capacity) + ")"};
      }
      return std::nullopt;
    }
    if (const auto* h = std::get_if<HoldingCapability>(&pre)) {
      if (!agent) return StepFailure{K::kMissingInstance, "no agent instance"};
      for (const auto& item : held(*agent)) {
        if (capability(kb_, item, h->capability)) return std::nullopt;
      }
      return StepFailure{K::kPreconditionFailed,
                         "requires holding something " + h->capability};
    }
    const auto& c = std::get<StateCondition>(pre);
    auto target = resolve(c.target, args);
    if (!target) {
      return StepFailure{K::kMissingInstance,
                         "no instance of '" + c.target.str() + "'"};
    }
    auto current = work_.object(*target, vocab::ex(c.predicate));
    bool holds = false;
    std::string expected;
    if (const bool* b = std::get_if<bool>(&c.value)) {
      bool actual = current && current->is_bool() && current->as_bool();
      holds = actual == *b;
      expected = *b ? "true" : "false";
    } else {
      auto ref = resolve(std::get<SlotRef>(c.value), args);
      if (!ref) {
        return StepFailure{K::kMissingInstance,
                           "no instance of '" +
                               std::get<SlotRef>(c.value).str() + "'"};
      }
      holds = current && *current == *ref;
      expected = display(*ref);
    }
    if (c.negate) holds = !holds;
    if (holds) return std::nullopt;
    return StepFailure{K::kPreconditionFailed,
                       "requires " + display(*target) + "." + c.predicate +
                           (c.negate ? " != " : " == ") + expected};
  }

  const KnowledgeBase& kb_;
  const SchemaSet& schemas_;
  const ExecOptions& options_;
  Graph work_;
  std::set<std::string, std::less<>> flags_;
  std::vector<Term> tracked_;
  std::vector<ProgressLine> lines_;
};

std::string cell(const ProgressEntry& e) {
  std::string out = e.location.empty() ? "?" : e.location;
  for (const auto& [flag, value] : e.flags) {
    if (value) out += "+" + flag;
  }
  return out;
}

}  // namespace

ExecResult execute(const ActionSequence& seq, const KnowledgeBase& kb,
                   const SchemaSet& schemas, const ExecOptions& options) {
  return Executor(kb, schemas, options).run(seq);
}

GoalSpec parse_goal(const std::vector<std::string>& lines) {
  GoalSpec goal;
  for (const auto& line : lines) {
    std::istringstream in(line);
    std::string s, p, o, extra;
    if (!(in >> s >> p >> o) || (in >> extra)) {
      throw ConfigError("goal item '" + line +
                        "' must be 'instance predicate value'");
    }
    Term object = o == "true"    ? Term::boolean(true)
                  : o == "false" ? Term::boolean(false)
                                 : vocab::ex(o);
    goal.required.push_back(Triple{vocab::ex(s), vocab::ex(p), object});
  }
  return goal;
}

std::string render_goal_item(const Triple& t) {
  std::string object = t.object.is_iri() ? std::string(t.object.local())
                                         : t.object.value();
  return std::string(t.subject.local()) + " " +
         std::string(t.predicate.local()) + " " + object;
}

bool check_goal(const ExecutionTrace& trace, const GoalSpec& goal) {
  if (trace.halted) return false;
  return std::all_of(goal.required.begin(), goal.required.end(),
                     [&](const Triple& t) {
                       return trace.final_state.contains(t);
                     });
}

std::string render_progress(const ExecutionTrace& trace) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header{"object"};
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    header.push_back(std::to_string(i + 1) + "." + trace.steps[i].action.verb);
  }
  rows.push_back(std::move(header));
  for (const auto& line : trace.progress) {
    std::vector<std::string> row{line.object};
    for (std::size_t i = 0; i < trace.steps.size(); ++i) {
      auto it = std::find_if(
          line.timeline.begin(), line.timeline.end(),
          [&](const ProgressEntry& e) { return e.step == i + 1; });
      row.push_back(it == line.timeline.end() ? "!" : cell(*it));
    }
    rows.push_back(std::move(row));
  }
  std::vector<std::size_t> widths(rows.front().size(), 0);
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      widths[c] = std::max(widths[c], row[c].size());
    }
  }
  std::string out;
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) line += " | ";
      line += row[c];
      line.append(widths[c] - row[c].size(), ' ');
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + "\n";
  }
  return out;
}

}  // namespace kgloop
