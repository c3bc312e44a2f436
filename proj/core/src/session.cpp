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

#include "kgloop/session.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "kgloop/error.hpp"

namespace kgloop {

std::string_view to_string(Configuration c) {
  switch (c) {
    case Configuration::kLlmOnly: return "LLM_only";
    case Configuration::kLlmKg: return "LLM_KG";
    case Configuration::kLlmKgHuman: return "LLM_KG_Human";
  }
  return "unknown";
}

Configuration parse_configuration(std::string_view name) {
  for (Configuration c : all_configurations()) {
    if (to_string(c) == name) return c;
  }
  throw ConfigError("unknown configuration '" + std::string(name) + "'");
}

const std::vector<Configuration>& all_configurations() {
  static const std::vector<Configuration> all{
      Configuration::kLlmOnly, Configuration::kLlmKg,
      Configuration::kLlmKgHuman};
  return all;
}

std::string_view to_string(Phase p) {
  switch (p) {
    case Phase::kPlanning: return "Planning";
    case Phase::kRefining: return "Refining";
    case Phase::kExecuting: return "Executing";
    case Phase::kAwaitingHuman: return "AwaitingHuman";
    case Phase::kDone: return "Done";
    case Phase::kFailed: return "Failed";
  }
  return "unknown";
}

std::string_view to_string(HumanQuery::Kind k) {
  return k == HumanQuery::Kind::kExistenceCheck ? "existence_check"
                                                : "attribute";
}

std::string_view to_string(HumanQuery::SlotType t) {
  switch (t) {
    case HumanQuery::SlotType::kNone: return "none";
    case HumanQuery::SlotType::kBool: return "bool";
    case HumanQuery::SlotType::kWord: return "word";
  }
  return "unknown";
}

std::string_view to_string(HumanAnswer::Kind k) {
  switch (k) {
    case HumanAnswer::Kind::kCorrection: return "correction";
    case HumanAnswer::Kind::kDeniesExistence: return "denies_existence";
    case HumanAnswer::Kind::kConfirmsNew: return "confirms_new";
    case HumanAnswer::Kind::kValue: return "value";
  }
  return "unknown";
}

HumanAnswer::Kind parse_answer_kind(std::string_view name) {
  for (auto k : {HumanAnswer::Kind::kCorrection,
                 HumanAnswer::Kind::kDeniesExistence,
                 HumanAnswer::Kind::kConfirmsNew, HumanAnswer::Kind::kValue}) {
    if (to_string(k) == name) return k;
  }
  throw InvalidAnswer("unknown answer kind '" + std::string(name) + "'");
}

std::string Event::to_json() const {
  nlohmann::ordered_json j;
  j["seq"] = seq;
  j["type"] = type;
  j["summary"] = summary;
  for (const auto& [key, value] : fields) {
    std::visit([&](const auto& v) { j[key] = v; }, value);
  }
  return j.dump();
}

namespace {

using Fields = std::vector<std::pair<std::string, EventValue>>;

EventValue num(std::size_t n) { return static_cast<std::int64_t>(n); }

std::string stats_text(const GraphStats& s) {
  return "(" + std::to_string(s.nodes) + ", " + std::to_string(s.edges) + ")";
}

}  // namespace

Session::Session(SessionConfig config, KnowledgeBase kb, Domain domain,
                 LlmClient& client, std::string task)
    : config_(std::move(config)),
      kb_(std::move(kb)),
      domain_(std::move(domain)),
      client_(&client),
      task_(std::move(task)) {
  if (config_.f_max < 1) throw ConfigError("F_max must be at least 1");
  initial_stats_ = kb_.stats();
}

Session Session::start(SessionConfig config, KnowledgeBase kb, Domain domain,
                       LlmClient& client, std::string task) {
  Session s(std::move(config), std::move(kb), std::move(domain), client,
            std::move(task));
  s.emit("start",
         "start " + std::string(to_string(s.config_.configuration)) +
             " F_max=" + std::to_string(s.config_.f_max),
         {{"task", s.task_},
          {"configuration", std::string(to_string(s.config_.configuration))},
          {"f_max", num(s.config_.f_max)}});
  s.emit("phase", "phase Planning", {{"phase", std::string("Planning")}});
  std::string prompt = build_initial_prompt(make_prompt_spec(
      s.task_, s.kb_, s.domain_.schemas, s.domain_.example));
  if (!s.accept_reply(prompt, false)) return s;
  if (s.refine_enabled()) {
    s.set_phase(Phase::kRefining);
    s.do_refining();
  } else {
    s.set_phase(Phase::kExecuting);
  }
  return s;
}

void Session::emit(std::string type, std::string summary, Fields fields) {
  events_.push_back(
      Event{events_.size(), std::move(type), std::move(summary),
            std::move(fields)});
}

void Session::set_phase(Phase p) {
  if (p == phase_) return;
  phase_ = p;
  emit("phase", "phase " + std::string(to_string(p)),
       {{"phase", std::string(to_string(p))}});
}

void Session::fail(std::string cause) {
  failure_cause_ = std::move(cause);
  pending_.reset();
  elicitation_.reset();
  set_phase(Phase::kFailed);
  emit("failed", "failed " + failure_cause_, {{"cause", failure_cause_}});
}

void Session::abort(std::string cause) {
  if (!terminal()) fail(std::move(cause));
}

bool Session::accept_reply(const std::string& prompt, bool feedback) {
  LlmReply reply;
  try {
    reply = client_->call(prompt);
  } catch (const ScriptExhausted&) {
    fail("script_exhausted");
    return false;
  } catch (const TransportError& e) {
    fail(std::string("transport_error: ") + e.what());
    return false;
  }
  tokens_ += reply.token_count;
  replies_.push_back(reply.text);
  if (feedback) ++f_;
  std::string kind = feedback ? "feedback" : "initial";
  emit("llm_call",
       feedback ? "llm_call feedback F=" + std::to_string(f_)
                : std::string("llm_call initial"),
       {{"kind", kind}, {"F", num(f_)}, {"tokens", num(reply.token_count)}});
  try {
    plan_ = parse_plan(reply.text, feedback ? PlanSource::kFeedbackLlm
                                            : PlanSource::kInitialLlm);
  } catch (const EmptyPlan&) {
    fail("empty_plan");
    return false;
  }
  unresolved_.clear();
  exec_error_.reset();
  emit("plan",
       "plan " + std::string(to_string(plan_.source)) +
           " steps=" + std::to_string(plan_.size()),
       {{"source", std::string(to_string(plan_.source))},
        {"steps", num(plan_.size())},
        {"text", render_plan(plan_)}});
  return true;
}

void Session::step() {
  if (terminal() || phase_ == Phase::kAwaitingHuman) return;
  if (++transitions_ > config_.max_transitions) {
    fail("transition_limit");
    return;
  }
  try {
    switch (phase_) {
      case Phase::kPlanning: do_planning(); break;
      case Phase::kRefining: do_refining(); break;
      case Phase::kExecuting: do_executing(); break;
      default: break;
    }
  } catch (const Error& e) {
    fail(std::string("internal_error: ") + e.what());
  }
}

void Session::run() {
  while (!terminal() && phase_ != Phase::kAwaitingHuman) step();
}

void Session::do_planning() {
  Problem problem = unresolved_.empty() ? Problem{*exec_error_}
                                        : Problem{unresolved_.front()};
  if (!accept_reply(build_feedback_prompt(plan_, problem), true)) return;
  set_phase(refine_enabled() ? Phase::kRefining : Phase::kExecuting);
}

void Session::do_refining() {
  RefineResult r = refine_sequence(plan_, kb_, domain_.lexicon, domain_.schemas);
  plan_ = std::move(r.refined);
  unresolved_ = std::move(r.unresolved);
  std::string changes;
  for (const auto& rw : r.rewrites) {
    if (!changes.empty()) changes += "; ";
    changes += std::to_string(rw.step) + ":" + rw.from + "->" + rw.to + " (" +
               std::string(to_string(rw.rule)) + ")";
  }
  Fields fields{{"unresolved", num(unresolved_.size())},
                {"rewrites", num(r.rewrites.size())},
                {"changes", changes}};
  if (!unresolved_.empty()) {
    fields.emplace_back("token", unresolved_.front().token);
    fields.emplace_back("mismatch",
                        std::string(to_string(unresolved_.front().kind)));
  }
  emit("refine",
       "refine unresolved=" + std::to_string(unresolved_.size()) +
           " rewrites=" + std::to_string(r.rewrites.size()),
       std::move(fields));
  after_refine();
}

void Session::after_refine() {
  if (unresolved_.empty()) {
    set_phase(Phase::kExecuting);
  } else if (f_ < config_.f_max && !after_human_) {
    set_phase(Phase::kPlanning);
  } else if (human_enabled()) {
    ask_existence();
  } else {
    fail("unresolved_mismatch");
  }
}

void Session::do_executing() {
  ExecOptions options = config_.exec;
  options.fail_at_step.reset();
  if (config_.fail_step > 0 && executions_ < config_.fail_times) {
    options.fail_at_step = config_.fail_step;
  }
  ++executions_;
  executed_plan_ = plan_;
  ExecResult result = execute(plan_, kb_, domain_.schemas, options);
  if (result.error) {
    const ExecError& e = *result.error;
    emit("execute",
         "execute error " + std::string(to_string(e.kind)) +
             " step=" + std::to_string(e.step),
         {{"ok", false},
          {"kind", std::string(to_string(e.kind))},
          {"step", num(e.step)},
          {"reason", e.reason}});
    exec_error_ = e;
  } else {
    emit("execute", "execute ok", {{"ok", true}});
    bool met = check_goal(result.trace, config_.goal);
    emit("goal", met ? "goal met" : "goal unmet", {{"met", met}});
    if (met) {
      kb_.state = result.trace.final_state;
      last_trace_ = std::move(result.trace);
      set_phase(Phase::kDone);
      emit("done", "done", {{"tokens", num(tokens_)}});
      return;
    }
    std::string missing;
    for (const auto& t : config_.goal.required) {
      if (!result.trace.final_state.contains(t)) {
        missing = render_goal_item(t);
        break;
      }
    }
    exec_error_ = ExecError{ExecError::Kind::kGoalNotSatisfied, 0,
                            "goal item '" + missing + "' does not hold"};
  }
  last_trace_ = std::move(result.trace);
  if (after_human_) {
    fail("exec_error_after_human");
  } else if (f_ < config_.f_max) {
    set_phase(Phase::kPlanning);
  } else {
    fail("exec_error_at_fmax");
  }
}

void Session::ask_existence() {
  const Mismatch& m = unresolved_.front();
  pending_ = HumanQuery{HumanQuery::Kind::kExistenceCheck, m.token, "",
                        HumanQuery::SlotType::kNone, m};
  set_phase(Phase::kAwaitingHuman);
  emit("human_query", "human_query existence_check " + m.token,
       {{"kind", std::string("existence_check")},
        {"token", m.token},
        {"step", num(m.step_index)},
        {"mismatch", std::string(to_string(m.kind))}});
}

void Session::ask_next_slot() {
  const auto& [slot, type] = elicitation_->slots[elicitation_->next];
  pending_ = HumanQuery{HumanQuery::Kind::kAttributeElicitation,
                        elicitation_->entity, slot, type,
                        pending_ ? pending_->context : std::nullopt};
  emit("human_query", "human_query attribute " + elicitation_->entity + " " + slot,
       {{"kind", std::string("attribute")},
        {"token", elicitation_->entity},
        {"slot", slot},
        {"slot_type", std::string(to_string(type))}});
}

void Session::patch_plan(ActionSequence seq) {
  plan_ = std::move(seq);
  plan_.source = PlanSource::kHumanPatched;
  emit("plan",
       "plan human_patched steps=" + std::to_string(plan_.size()),
       {{"source", std::string("human_patched")},
        {"steps", num(plan_.size())},
        {"text", render_plan(plan_)}});
}

void Session::submit_answer(const HumanAnswer& answer) {
  using AK = HumanAnswer::Kind;
  if (phase_ != Phase::kAwaitingHuman || !pending_) {
    throw InvalidAnswer("session is not awaiting an answer");
  }
  const HumanQuery query = *pending_;
  if (query.kind == HumanQuery::Kind::kExistenceCheck) {
    const Mismatch& m = *query.context;
    switch (answer.kind) {
      case AK::kValue:
        throw InvalidAnswer("an existence check needs correction, "
                            "denies_existence or confirms_new");
      case AK::kCorrection: {
        const std::string& w = answer.value;
        bool ok = false;
        if (m.kind == MismatchKind::kUnknownAction) {
          const ActionSchema* s = domain_.schemas.find(w);
          ok = s != nullptr && s->arity == m.arity;
        } else {
          ok = valid_name(w) && static_cast<bool>(entity_exists(kb_, w));
        }
        if (!ok) {
          throw InvalidAnswer("'" + w + "' does not resolve in the knowledge base");
        }
        emit("human_answer", "human_answer correction " + w,
             {{"kind", std::string("correction")}, {"value", w}});
        ActionSequence seq = plan_;
        for (auto& action : seq.steps) {
          if (m.kind == MismatchKind::kUnknownAction) {
            if (action.verb == m.token) action.verb = w;
          } else {
            std::replace(action.args.begin(), action.args.end(), m.token, w);
          }
        }
        pending_.reset();
        after_human_ = true;
        patch_plan(std::move(seq));
        set_phase(Phase::kRefining);
        return;
      }
      case AK::kDeniesExistence: {
        emit("human_answer", "human_answer denies_existence",
             {{"kind", std::string("denies_existence")}});
        ActionSequence seq = plan_;
        seq.steps.erase(seq.steps.begin() +
                        static_cast<std::ptrdiff_t>(m.step_index - 1));
        pending_.reset();
        after_human_ = true;
        patch_plan(std::move(seq));
        if (plan_.empty()) {
          fail("empty_plan");
        } else {
          set_phase(Phase::kRefining);
        }
        return;
      }
      case AK::kConfirmsNew: {
        if (m.kind == MismatchKind::kUnknownAction) {
          throw InvalidAnswer("new actions cannot be confirmed; answer with a "
                              "correction or denies_existence");
        }
        emit("human_answer", "human_answer confirms_new",
             {{"kind", std::string("confirms_new")}});
        Elicitation e;
        e.entity = m.token;
        e.slots.emplace_back("type", HumanQuery::SlotType::kWord);
        std::set<std::string> caps;
        for (const auto& [cap, flag] : kb_.capability_states) caps.insert(cap);
        for (const auto& cap : domain_.schemas.capability_vocabulary()) {
          caps.insert(cap);
        }
        for (const auto& cap : caps) {
          e.slots.emplace_back(cap, HumanQuery::SlotType::kBool);
        }
        e.slots.emplace_back("location", HumanQuery::SlotType::kWord);
        elicitation_ = std::move(e);
        ask_next_slot();
        return;
      }
    }
    return;
  }

  if (answer.kind != AK::kValue) {
    throw InvalidAnswer("attribute slot '" + query.slot + "' needs a value");
  }
  const std::string& v = answer.value;
  if (query.slot_type == HumanQuery::SlotType::kBool) {
    if (v != "true" && v != "false") {
      throw InvalidAnswer("slot '" + query.slot + "' needs true or false");
    }
  } else if (!valid_name(v)) {
    throw InvalidAnswer("'" + v + "' is not a valid name");
  } else if (query.slot == "location" &&
             entity_exists(kb_, v).kind != EntityKind::kInstance) {
    throw InvalidAnswer("location '" + v + "' is not a known instance");
  }
  emit("human_answer", "human_answer value " + v,
       {{"kind", std::string("value")}, {"slot", query.slot}, {"value", v}});
  Elicitation& e = *elicitation_;
  e.answers.emplace_back(query.slot, v);
  if (query.slot == "location") {
    for (const auto& [slot, value] : e.answers) {
      if (value != "true") continue;
      auto it = kb_.capability_states.find(slot);
      if (it == kb_.capability_states.end()) continue;
      bool seen = std::any_of(e.slots.begin(), e.slots.end(),
                              [&](const auto& s) { return s.first == it->second; });
      if (!seen) e.slots.emplace_back(it->second, HumanQuery::SlotType::kBool);
    }
  }
  if (++e.next < e.slots.size()) {
    ask_next_slot();
  } else {
    finish_elicitation();
  }
}

void Session::finish_elicitation() {
  const Elicitation& el = *elicitation_;
  std::set<std::string, std::less<>> flags;
  for (const auto& [cap, flag] : kb_.capability_states) flags.insert(flag);
  auto caps = known_capabilities(kb_);

  Expansion x;
  x.entity = el.entity;
  for (const auto& [slot, value] : el.answers) {
    if (slot == "type") {
      x.type = value;
    } else if (slot == "location") {
      x.location = value;
    } else if (flags.contains(slot)) {
      x.instance_state.emplace_back(slot, value == "true");
    } else if (value == "true") {
      x.class_attributes.emplace_back(slot, true);
      if (!std::binary_search(caps.begin(), caps.end(), slot)) {
        x.introduces_predicates = true;
      }
    }
  }
  GraphStats before = kb_.stats();
  try {
    expand(kb_, x);
  } catch (const Error& err) {
    fail(std::string("expansion_rejected: ") + err.what());
    return;
  }
  GraphStats after = kb_.stats();
  expansions_.push_back(x);
  emit("expansion",
       "expansion " + x.entity + " " + stats_text(before) + " -> " +
           stats_text(after),
       {{"entity", x.entity},
        {"nodes_before", num(before.nodes)},
        {"edges_before", num(before.edges)},
        {"nodes_after", num(after.nodes)},
        {"edges_after", num(after.edges)}});
  pending_.reset();
  elicitation_.reset();
  after_human_ = true;
  set_phase(Phase::kRefining);
}

Snapshot Session::snapshot() const {
  Snapshot s;
  s.task = task_;
  s.configuration = config_.configuration;
  s.phase = phase_;
  s.f = f_;
  s.f_max = config_.f_max;
  s.plan = plan_;
  s.unresolved = unresolved_;
  s.exec_error = exec_error_;
  s.pending_query = pending_;
  s.initial_stats = initial_stats_;
  s.stats = kb_.stats();
  s.tokens = tokens_;
  s.replies = replies_;
  s.failure_cause = failure_cause_;
  s.events = events_;
  return s;
}

std::string Session::trace_jsonl() const {
  std::string out;
  for (const auto& e : events_) out += e.to_json() + "\n";
  return out;
}

std::string Session::trace_summary() const {
  std::string out;
  for (const auto& e : events_) out += e.summary + "\n";
  return out;
}

std::optional<HumanAnswer> OracleScript::next() {
  if (cursor_ >= answers_.size()) return std::nullopt;
  return answers_[cursor_++];
}

OracleScript parse_oracle(std::string_view text) {
  std::vector<HumanAnswer> answers;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string kind, value, extra;
    if (!(fields >> kind)) continue;
    fields >> value;
    if (fields >> extra) {
      throw ConfigError("oracle line " + std::to_string(number) +
                        ": too many fields");
    }
    HumanAnswer a;
    try {
      a.kind = parse_answer_kind(kind);
    } catch (const InvalidAnswer& e) {
      throw ConfigError("oracle line " + std::to_string(number) + ": " +
                        e.what());
    }
    bool needs_value = a.kind == HumanAnswer::Kind::kCorrection ||
                       a.kind == HumanAnswer::Kind::kValue;
    if (needs_value == value.empty()) {
      throw ConfigError("oracle line " + std::to_string(number) + ": '" +
                        kind + (needs_value ? "' needs a value"
                                            : "' takes no value"));
    }
    a.value = std::move(value);
    answers.push_back(std::move(a));
  }
  return OracleScript(std::move(answers));
}

OracleScript load_oracle(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_oracle(ss.str());
}

void drive(Session& session, OracleScript& oracle) {
  for (;;) {
    session.run();
    if (session.terminal()) return;
    auto answer = oracle.next();
    if (!answer) {
      session.abort("oracle_exhausted");
      return;
    }
    try {
      session.submit_answer(*answer);
    } catch (const InvalidAnswer&) {
      session.abort("invalid_oracle_answer");
      return;
    }
  }
}

}  // namespace kgloop
