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

#include "kgloop/knowledge.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "kgloop/error.hpp"
#include "kgloop/turtle.hpp"

namespace kgloop {

bool valid_name(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '_' || c == '-';
  });
}

namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

bool is_instance(const KnowledgeBase& kb, const Term& t) {
  return kb.state.object(t, vocab::rdf_type()).has_value();
}

bool is_class(const KnowledgeBase& kb, const Term& t) {
  return !kb.attributes.about(t).empty();
}

}  // namespace

CapabilityStateMap parse_capability_map(std::string_view text) {
  CapabilityStateMap out;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    std::string body = trim(line);
    if (body.empty()) continue;
    auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("capability map line " + std::to_string(number) +
                        ": expected capability=state");
    }
    std::string key = trim(body.substr(0, eq));
    std::string value = trim(body.substr(eq + 1));
    if (!valid_name(key) || !valid_name(value)) {
      throw ConfigError("capability map line " + std::to_string(number) +
                        ": invalid predicate name");
    }
    if (!out.emplace(key, value).second) {
      throw ConfigError("capability map line " + std::to_string(number) +
                        ": duplicate capability '" + key + "'");
    }
  }
  return out;
}

CapabilityStateMap load_capability_map(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_capability_map(ss.str());
}

void validate(const KnowledgeBase& kb) {
  std::set<std::string, std::less<>> state_preds;
  for (const auto& [cap, flag] : kb.capability_states) state_preds.insert(flag);
  for (const auto& subject : kb.state.subjects()) {
    std::size_t types = 0, locations = 0;
    for (const auto& t : kb.state.about(subject)) {
      if (t.predicate == vocab::rdf_type()) {
        ++types;
      } else if (t.predicate == vocab::obj_location()) {
        ++locations;
      } else if (t.predicate != vocab::obj_name() &&
                 !state_preds.contains(t.predicate.local())) {
        throw InvalidKnowledgeBase(subject.str() + " uses state predicate " +
                                   t.predicate.str() +
                                   " outside the capability map");
      }
    }
    if (types != 1 || locations != 1) {
      throw InvalidKnowledgeBase(
          subject.str() + " must have exactly one rdf:type and one "
                          "ex:obj_location (has " + std::to_string(types) +
          " and " + std::to_string(locations) + ")");
    }
  }
}

KnowledgeBase load_knowledge_base(const std::filesystem::path& state_ttl,
                                  const std::filesystem::path& attribute_ttl,
                                  const std::filesystem::path& capability_map) {
  KnowledgeBase kb{load_turtle(attribute_ttl), load_turtle(state_ttl),
                   load_capability_map(capability_map)};
  validate(kb);
  return kb;
}

EntityRef entity_exists(const KnowledgeBase& kb, std::string_view name) {
  if (!valid_name(name)) return {};
  Term literal = Term::string(name);
  for (const auto& t : kb.state.match(std::nullopt, vocab::obj_name(), literal)) {
    if (is_instance(kb, t.subject)) return {EntityKind::kInstance, t.subject};
  }
  Term iri = vocab::ex(name);
  if (is_instance(kb, iri)) return {EntityKind::kInstance, iri};
  if (is_class(kb, iri)) return {EntityKind::kClass, iri};
  auto named = kb.attributes.match(std::nullopt, vocab::obj_name(), literal);
  if (!named.empty()) return {EntityKind::kClass, named.front().subject};
  return {};
}

std::string name_of(const KnowledgeBase& kb, const Term& entity) {
  for (const Graph* g : {&kb.state, &kb.attributes}) {
    if (auto n = g->object(entity, vocab::obj_name()); n && n->is_string()) {
      return n->value();
    }
  }
  return std::string(entity.local());
}

std::optional<Term> class_of(const KnowledgeBase& kb, const Term& entity) {
  if (is_instance(kb, entity)) {
    std::string name = name_of(kb, entity);
    if (valid_name(name)) {
      Term candidate = vocab::ex(name);
      if (is_class(kb, candidate)) return candidate;
      auto named = kb.attributes.match(std::nullopt, vocab::obj_name(),
                                       Term::string(name));
      if (!named.empty()) return named.front().subject;
    }
    return std::nullopt;
  }
  if (is_class(kb, entity)) return entity;
  return std::nullopt;
}

std::optional<Term> instance_for(const KnowledgeBase& kb,
                                 std::string_view name) {
  EntityRef ref = entity_exists(kb, name);
  if (ref.kind == EntityKind::kInstance) return ref.iri;
  if (ref.kind != EntityKind::kClass) return std::nullopt;
  for (const auto& subject : kb.state.subjects()) {
    if (!is_instance(kb, subject)) continue;
    auto c = class_of(kb, subject);
    if (c && *c == *ref.iri) return subject;
  }
  return std::nullopt;
}

bool capability(const KnowledgeBase& kb, const Term& entity,
                std::string_view predicate) {
  if (!is_instance(kb, entity) && !is_class(kb, entity)) {
    throw UnknownEntity("unknown entity " + entity.str());
  }
  auto cls = class_of(kb, entity);
  if (!cls || !valid_name(predicate)) return false;
  return kb.attributes.contains(
      Triple{*cls, vocab::ex(predicate), Term::boolean(true)});
}

std::vector<std::string> entity_names(const KnowledgeBase& kb) {
  std::set<std::string> names;
  for (const auto& subject : kb.state.subjects()) {
    if (!is_instance(kb, subject)) continue;
    names.insert(std::string(subject.local()));
    names.insert(name_of(kb, subject));
  }
  for (const auto& subject : kb.attributes.subjects()) {
    names.insert(std::string(subject.local()));
    names.insert(name_of(kb, subject));
  }
  std::vector<std::string> out;
  for (auto& n : names) {
    if (valid_name(n)) out.push_back(n);
  }
  return out;
}

std::vector<std::string> known_capabilities(const KnowledgeBase& kb) {
  std::set<std::string> caps;
  for (const auto& [cap, flag] : kb.capability_states) caps.insert(cap);
  for (const auto& t : kb.attributes) {
    if (t.object.is_bool()) caps.insert(std::string(t.predicate.local()));
  }
  return {caps.begin(), caps.end()};
}

std::string_view to_string(MismatchKind kind) {
  switch (kind) {
    case MismatchKind::kUnknownAction: return "unknown_action";
    case MismatchKind::kUnknownObject: return "unknown_object";
    case MismatchKind::kCapabilityViolation: return "capability_violation";
  }
  return "unknown";
}

std::vector<Mismatch> step_mismatches(const KnowledgeBase& kb,
                                      const SchemaSet& schemas,
                                      const Action& action,
                                      std::size_t step_index) {
  std::vector<Mismatch> out;
  const ActionSchema* schema = schemas.find(action.verb);
  bool verb_ok = schema != nullptr && schema->arity == action.args.size();
  if (!verb_ok) {
    Mismatch m;
    m.kind = MismatchKind::kUnknownAction;
    m.token = action.verb;
    m.step_index = step_index;
    m.arity = action.args.size();
    out.push_back(std::move(m));
  }
  for (std::size_t i = 0; i < action.args.size(); ++i) {
    const std::string& arg = action.args[i];
    EntityRef ref = entity_exists(kb, arg);
    if (!ref) {
      Mismatch m;
      m.kind = MismatchKind::kUnknownObject;
      m.token = arg;
      m.step_index = step_index;
      m.arg_index = i;
      out.push_back(std::move(m));
      continue;
    }
    if (!verb_ok) continue;
    for (const auto& req : schema->required_capabilities) {
      if (req.arg != i) continue;
      if (!capability(kb, *ref.iri, req.capability)) {
        Mismatch m;
        m.kind = MismatchKind::kCapabilityViolation;
        m.token = arg;
        m.step_index = step_index;
        m.arg_index = i;
        m.capability = req.capability;
        out.push_back(std::move(m));
        break;
      }
    }
  }
  return out;
}

std::optional<Mismatch> feasibility(const KnowledgeBase& kb,
                                    const SchemaSet& schemas,
                                    const Action& action,
                                    std::size_t step_index) {
  auto all = step_mismatches(kb, schemas, action, step_index);
  if (all.empty()) return std::nullopt;
  return all.front();
}

void expand(KnowledgeBase& kb, const Expansion& e) {
  if (!valid_name(e.entity)) {
    throw InvalidExpansion("invalid entity name '" + e.entity + "'");
  }
  if (!valid_name(e.type)) {
    throw InvalidExpansion("invalid type '" + e.type + "'");
  }
  if (!valid_name(e.location)) {
    throw InvalidExpansion("expansion for '" + e.entity +
                           "' needs a location");
  }
  auto reserved = [](std::string_view p) {
    return p == "obj_name" || p == "obj_location" || p == "type";
  };
  auto caps = known_capabilities(kb);
  for (const auto& [pred, value] : e.class_attributes) {
    if (!valid_name(pred) || reserved(pred)) {
      throw InvalidExpansion("invalid attribute predicate '" + pred + "'");
    }
    if (!e.introduces_predicates &&
        !std::binary_search(caps.begin(), caps.end(), pred)) {
      throw InvalidExpansion("attribute '" + pred +
                             "' is not in the capability vocabulary");
    }
  }
  std::set<std::string, std::less<>> flags;
  for (const auto& [cap, flag] : kb.capability_states) flags.insert(flag);
  for (const auto& [pred, value] : e.instance_state) {
    if (!flags.contains(pred)) {
      throw InvalidExpansion("state predicate '" + pred +
                             "' is not governed by any capability");
    }
  }

  Term entity = vocab::ex(e.entity);
  Term type = vocab::ex(e.type);
  std::optional<Term> instance;
  if (auto ref = entity_exists(kb, e.entity);
      ref.kind == EntityKind::kInstance) {
    instance = ref.iri;
  }
  if (!e.override_type) {
    for (const auto& [graph, subject] :
         {std::pair{&kb.attributes, entity},
          std::pair{&kb.state, instance.value_or(entity)}}) {
      for (const auto& existing : graph->objects(subject, vocab::rdf_type())) {
        if (existing != type) {
          throw ConflictingType(subject.str() + " already has type " +
                                existing.str() + ", not " + type.str());
        }
      }
    }
  }

  Term name = Term::string(e.entity);
  kb.attributes.set(entity, vocab::rdf_type(), type);
  kb.attributes.set(entity, vocab::obj_name(), name);
  for (const auto& [pred, value] : e.class_attributes) {
    kb.attributes.set(entity, vocab::ex(pred), Term::boolean(value));
  }

  Term target = instance.value_or(entity);
  kb.state.set(target, vocab::rdf_type(), type);
  if (!instance) {
    kb.state.set(target, vocab::obj_name(), name);
    kb.state.set(target, vocab::obj_location(), vocab::ex(e.location));
  }
  for (const auto& [pred, value] : e.instance_state) {
    kb.state.set(target, vocab::ex(pred), Term::boolean(value));
  }
}

KnowledgeBase apply_expansion(KnowledgeBase kb, const Expansion& e) {
  expand(kb, e);
  return kb;
}

}  // namespace kgloop
