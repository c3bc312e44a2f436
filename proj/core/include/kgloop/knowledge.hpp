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
#include <utility>
#include <vector>

#include "kgloop/actionlang.hpp"
#include "kgloop/triplestore.hpp"

namespace kgloop {

/// Capability predicate -> state flag it governs (IsSliceable -> sliced).
using CapabilityStateMap = std::map<std::string, std::string, std::less<>>;

/// `key=value` lines; `#` starts a comment.
CapabilityStateMap parse_capability_map(std::string_view text);
CapabilityStateMap load_capability_map(const std::filesystem::path& path);

/// The attribute graph (class capabilities) and the state graph (instances,
/// their locations and state flags) of one domain.
///
/// Instances are state-graph subjects. An instance named `onion` (its
/// ex:obj_name) belongs to the attribute-graph class ex:onion.
struct KnowledgeBase {
  Graph attributes;
  Graph state;
  CapabilityStateMap capability_states;

  GraphStats stats() const { return kgloop::stats(state, attributes); }
};

/// Throws InvalidKnowledgeBase when an instance lacks exactly one rdf:type
/// and one ex:obj_location, or uses a state predicate outside the
/// capability map range.
void validate(const KnowledgeBase& kb);

KnowledgeBase load_knowledge_base(const std::filesystem::path& state_ttl,
                                  const std::filesystem::path& attribute_ttl,
                                  const std::filesystem::path& capability_map);

enum class EntityKind { kAbsent, kInstance, kClass };

struct EntityRef {
  EntityKind kind = EntityKind::kAbsent;
  std::optional<Term> iri;

  explicit operator bool() const noexcept {
    return kind != EntityKind::kAbsent;
  }
};

/// Resolves a plan token: an instance (by ex:obj_name, then by IRI local
/// name) in the state graph, else a class in the attribute graph, else
/// absent.
EntityRef entity_exists(const KnowledgeBase& kb, std::string_view name);

/// Class IRI of an instance or class; nullopt for an instance whose class
/// is not described in the attribute graph.
std::optional<Term> class_of(const KnowledgeBase& kb, const Term& entity);

/// Instance a token refers to: the instance itself, or the first instance
/// of the named class. nullopt if nothing can be acted on.
std::optional<Term> instance_for(const KnowledgeBase& kb, std::string_view name);

/// Display name of an entity (ex:obj_name if present, else local name).
std::string name_of(const KnowledgeBase& kb, const Term& entity);

/// Closed-world capability check. Throws UnknownEntity for entities that
/// appear in neither graph.
bool capability(const KnowledgeBase& kb, const Term& entity,
                std::string_view predicate);

/// Non-empty and made of letters, digits, '_' and '-'.
bool valid_name(std::string_view s);

/// Every token entity_exists() resolves, sorted.
std::vector<std::string> entity_names(const KnowledgeBase& kb);

/// Capability keys of the map plus predicates used with boolean objects in
/// the attribute graph.
std::vector<std::string> known_capabilities(const KnowledgeBase& kb);

// ---------------------------------------------------------------------------
// Mismatches

enum class MismatchKind { kUnknownAction, kUnknownObject, kCapabilityViolation };

std::string_view to_string(MismatchKind kind);

/// A plan token the knowledge base cannot validate.
struct Mismatch {
  MismatchKind kind = MismatchKind::kUnknownObject;
  std::string token;
  /// 1-based step number.
  std::size_t step_index = 1;
  /// Unset for kUnknownAction.
  std::optional<std::size_t> arg_index;
  /// Violated capability (kCapabilityViolation only).
  std::string capability;
  /// Argument count of the offending step (kUnknownAction only).
  std::size_t arity = 0;

  friend bool operator==(const Mismatch&, const Mismatch&) = default;
};

/// All mismatches of one step, verb first and then arguments in order.
/// Capabilities are only checked when the verb is known with the right
/// arity.
std::vector<Mismatch> step_mismatches(const KnowledgeBase& kb,
                                      const SchemaSet& schemas,
                                      const Action& action,
                                      std::size_t step_index);

/// nullopt when the action is feasible, else its first mismatch.
std::optional<Mismatch> feasibility(const KnowledgeBase& kb,
                                    const SchemaSet& schemas,
                                    const Action& action,
                                    std::size_t step_index = 1);

// ---------------------------------------------------------------------------
// Knowledge expansion

/// Human-confirmed knowledge about one entity: its class attributes and
/// the current state of its instance.
struct Expansion {
  std::string entity;
  std::string type = "object";
  std::vector<std::pair<std::string, bool>> class_attributes;
  std::string location;
  std::vector<std::pair<std::string, bool>> instance_state;
  /// Allow class attribute predicates not yet known to the knowledge base.
  bool introduces_predicates = false;
  /// Allow replacing an existing, different rdf:type.
  bool override_type = false;

  friend bool operator==(const Expansion&, const Expansion&) = default;
};

/// Adds (or value-updates) the entity's class block in the attribute graph
/// and its instance block in the state graph.
///
/// Throws InvalidExpansion for malformed input and ConflictingType when the
/// entity already has a different rdf:type. An existing instance keeps its
/// location; only its flags are updated.
void expand(KnowledgeBase& kb, const Expansion& e);
KnowledgeBase apply_expansion(KnowledgeBase kb, const Expansion& e);

}  // namespace kgloop
