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

#include "kgloop/actionlang.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "kgloop/error.hpp"

namespace kgloop {
namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return out;
}

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

const std::regex& step_line() {
  static const std::regex re(
      R"(^\s*(\d+)\s*[.)]\s*([A-Za-z_][A-Za-z0-9_]*)\s*\(\s*([A-Za-z0-9_\- ,]*)\)\s*\.?\s*$)");
  return re;
}

bool valid_token(std::string_view t) {
  return !t.empty() && std::all_of(t.begin(), t.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '_' || c == '-';
  });
}

}  // namespace

std::string_view to_string(PlanSource source) {
  switch (source) {
    case PlanSource::kInitialLlm: return "initial_llm";
    case PlanSource::kFeedbackLlm: return "feedback_llm";
    case PlanSource::kRefined: return "refined";
    case PlanSource::kHumanPatched: return "human_patched";
  }
  return "unknown";
}

ActionSequence parse_plan(std::string_view text, PlanSource source) {
  ActionSequence seq;
  seq.source = source;
  std::set<long> seen;
  long last = 0;
  std::istringstream lines{std::string(text)};
  std::string line;
  while (std::getline(lines, line)) {
    std::smatch m;
    if (!std::regex_match(line, m, step_line())) continue;
    Action action;
    action.verb = lower(m[2].str());
    std::string args = m[3].str();
    bool ok = true;
    if (!trim(args).empty()) {
      std::istringstream parts(args);
      std::string part;
      while (std::getline(parts, part, ',')) {
        std::string tok = lower(trim(part));
        if (!valid_token(tok)) {
          ok = false;
          break;
        }
        action.args.push_back(std::move(tok));
      }
      if (!args.empty() && args.back() == ',') ok = false;
    }
    if (!ok) continue;
    long number = std::stol(m[1].str());
    if (seen.contains(number)) {
      seq.warnings.push_back("duplicate step number " + std::to_string(number));
    } else if (number != last + 1) {
      seq.warnings.push_back("step numbered " + std::to_string(number) +
                             " renumbered to " +
                             std::to_string(seq.steps.size() + 1));
    }
    seen.insert(number);
    last = number;
    seq.steps.push_back(std::move(action));
  }
  if (seq.steps.empty()) throw EmptyPlan();
  return seq;
}

std::string render_action(const Action& action) {
  std::string out = action.verb + "(";
  for (std::size_t i = 0; i < action.args.size(); ++i) {
    if (i > 0) out += ", ";
    out += action.args[i];
  }
  out += ")";
  return out;
}

std::string render_plan(const ActionSequence& seq) {
  std::string out;
  for (std::size_t i = 0; i < seq.steps.size(); ++i) {
    if (i > 0) out += '\n';
    out += std::to_string(i + 1) + ". " + render_action(seq.steps[i]);
  }
  return out;
}

SlotRef SlotRef::parse(std::string_view text) {
  SlotRef ref;
  if (text.size() > 1 && text.front() == '$') {
    std::string digits(text.substr(1));
    if (!std::all_of(digits.begin(), digits.end(),
                     [](unsigned char c) { return std::isdigit(c); })) {
      throw MalformedSchema("bad argument reference '" + std::string(text) +
                            "'");
    }
    ref.kind = Kind::kArg;
    ref.arg = std::stoul(digits);
  } else if (text == "agent") {
    ref.kind = Kind::kAgent;
  } else if (valid_token(text)) {
    ref.kind = Kind::kNamed;
    ref.name = std::string(text);
  } else {
    throw MalformedSchema("bad instance reference '" + std::string(text) +
                          "'");
  }
  return ref;
}

std::string SlotRef::str() const {
  switch (kind) {
    case Kind::kArg: return "$" + std::to_string(arg);
    case Kind::kAgent: return "agent";
    case Kind::kNamed: return name;
  }
  return {};
}

SchemaSet::SchemaSet(std::vector<ActionSchema> schemas)
    : schemas_(std::move(schemas)) {
  for (std::size_t i = 0; i < schemas_.size(); ++i) {
    const auto& s = schemas_[i];
    if (!valid_token(s.verb) || lower(s.verb) != s.verb) {
      throw MalformedSchema("invalid verb '" + s.verb + "'");
    }
    if (!index_.emplace(s.verb, i).second) throw DuplicateVerb(s.verb);
    auto check_ref = [&](const SlotRef& r) {
      if (r.kind == SlotRef::Kind::kArg && r.arg >= s.arity) {
        throw MalformedSchema(s.verb + ": reference " + r.str() +
                              " exceeds arity " + std::to_string(s.arity));
      }
    };
    for (const auto& req : s.required_capabilities) {
      if (req.arg >= s.arity) {
        throw MalformedSchema(s.verb + ": capability on argument " +
                              std::to_string(req.arg) + " exceeds arity");
      }
    }
    for (const auto& pre : s.preconditions) {
      if (const auto* c = std::get_if<StateCondition>(&pre)) {
        check_ref(c->target);
        if (const auto* v = std::get_if<SlotRef>(&c->value)) check_ref(*v);
      }
    }
    for (const auto& e : s.effects) {
      check_ref(e.target);
      if (const auto* v = std::get_if<SlotRef>(&e.value)) check_ref(*v);
    }
  }
}

const ActionSchema* SchemaSet::find(std::string_view verb) const {
  auto it = index_.find(verb);
  return it == index_.end() ? nullptr : &schemas_[it->second];
}

std::vector<std::string> SchemaSet::verbs() const {
  std::vector<std::string> out;
  out.reserve(schemas_.size());
  for (const auto& s : schemas_) out.push_back(s.verb);
  return out;
}

std::vector<std::string> SchemaSet::capability_vocabulary() const {
  std::set<std::string> caps;
  for (const auto& s : schemas_) {
    for (const auto& r : s.required_capabilities) caps.insert(r.capability);
    for (const auto& p : s.preconditions) {
      if (const auto* h = std::get_if<HoldingCapability>(&p)) {
        caps.insert(h->capability);
      }
    }
  }
  return {caps.begin(), caps.end()};
}

namespace {

using nlohmann::json;

std::string need_string(const json& j, const char* key,
                        const std::string& where) {
  if (!j.contains(key) || !j[key].is_string()) {
    throw MalformedSchema(where + ": missing string field '" + key + "'");
  }
  return j[key].get<std::string>();
}

std::size_t need_index(const json& j, const char* key,
                       const std::string& where) {
  if (!j.contains(key) || !j[key].is_number_unsigned()) {
    throw MalformedSchema(where + ": missing non-negative integer '" + key +
                          "'");
  }
  return j[key].get<std::size_t>();
}

StateValue parse_value(const json& j, const std::string& where) {
  if (j.is_boolean()) return j.get<bool>();
  if (j.is_string()) return SlotRef::parse(j.get<std::string>());
  throw MalformedSchema(where + ": value must be a boolean or reference");
}

ActionSchema parse_one(const json& j, std::size_t index) {
  std::string where = "schema #" + std::to_string(index + 1);
  if (!j.is_object()) throw MalformedSchema(where + ": expected an object");
  ActionSchema s;
  s.verb = need_string(j, "verb", where);
  where += " (" + s.verb + ")";
  s.arity = need_index(j, "arity", where);
  s.description = j.value("description", "");
  for (const auto& r : j.value("requires", json::array())) {
    s.required_capabilities.push_back(
        {need_index(r, "arg", where), need_string(r, "capability", where)});
  }
  for (const auto& p : j.value("pre", json::array())) {
    if (p.contains("holding_capability")) {
      s.preconditions.emplace_back(
          HoldingCapability{need_string(p, "holding_capability", where)});
    } else if (p.contains("hands_free")) {
      s.preconditions.emplace_back(HandsFree{});
    } else {
      StateCondition c;
      c.target = SlotRef::parse(need_string(p, "target", where));
      c.predicate = need_string(p, "pred", where);
      if (!p.contains("value")) {
        throw MalformedSchema(where + ": precondition without value");
      }
      c.value = parse_value(p["value"], where);
      c.negate = p.value("negate", false);
      s.preconditions.emplace_back(std::move(c));
    }
  }
  for (const auto& e : j.value("effects", json::array())) {
    Effect eff;
    eff.target = SlotRef::parse(need_string(e, "target", where));
    eff.predicate = need_string(e, "pred", where);
    if (!e.contains("value")) {
      throw MalformedSchema(where + ": effect without value");
    }
    eff.value = parse_value(e["value"], where);
    s.effects.push_back(std::move(eff));
  }
  return s;
}

}  // namespace

SchemaSet parse_schemas(std::string_view text) {
  if (trim(text).empty() ||
      std::all_of(text.begin(), text.end(),
                  [](unsigned char c) { return std::isspace(c); })) {
    return SchemaSet{};
  }
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw MalformedSchema(std::string("schema file is not valid JSON: ") +
                          e.what());
  }
  const json& list = doc.is_object() ? doc.value("schemas", json::array())
                                     : doc;
  if (!list.is_array()) throw MalformedSchema("expected a list of schemas");
  std::vector<ActionSchema> schemas;
  for (std::size_t i = 0; i < list.size(); ++i) {
    try {
      schemas.push_back(parse_one(list[i], i));
    } catch (const json::exception& e) {
      throw MalformedSchema("schema #" + std::to_string(i + 1) + ": " +
                            e.what());
    }
  }
  return SchemaSet(std::move(schemas));
}

SchemaSet load_schemas(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_schemas(ss.str());
}

}  // namespace kgloop
