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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kgloop/actionlang.hpp"
#include "kgloop/knowledge.hpp"
#include "kgloop/lexicon.hpp"

namespace kgloop {

/// Runs feasibility on every step and collects all mismatches in
/// (step, argument) order. Empty iff the plan is fully feasible.
std::vector<Mismatch> detect_mismatches(const ActionSequence& seq,
                                        const KnowledgeBase& kb,
                                        const SchemaSet& schemas);

enum class MatchRule { kExact, kSibling, kHyponym, kHypernym };

std::string_view to_string(MatchRule rule);

struct Replacement {
  std::string word;
  MatchRule rule = MatchRule::kExact;
  friend bool operator==(const Replacement&, const Replacement&) = default;
};

/// Lexical repair for one mismatch.
///
/// Candidates are knowledge-base entities (schema verbs of the same arity
/// for unknown actions; entities with the violated capability for
/// capability violations) sharing a category with the token. Preference:
/// exact match, then a sibling under a shared immediate hypernym, then a
/// hyponym, then a hypernym; within a tier nearer words win and remaining
/// ties go to the lexicographically smallest word.
std::optional<Replacement> propose(const Mismatch& m, const KnowledgeBase& kb,
                                   const Lexicon& lexicon,
                                   const SchemaSet& schemas);

std::optional<std::string> propose_replacement(const Mismatch& m,
                                               const KnowledgeBase& kb,
                                               const Lexicon& lexicon,
                                               const SchemaSet& schemas);

/// One substitution made during refinement.
struct Rewrite {
  std::size_t step = 1;
  /// Unset when the verb was replaced.
  std::optional<std::size_t> arg;
  std::string from;
  std::string to;
  MatchRule rule = MatchRule::kExact;
  friend bool operator==(const Rewrite&, const Rewrite&) = default;
};

struct RefineResult {
  ActionSequence refined;
  /// Mismatches left after repair; non-empty means an unknown-item error.
  std::vector<Mismatch> unresolved;
  std::vector<Rewrite> rewrites;
};

/// Repairs mismatches by lexical replacement until no further substitution
/// applies, then re-detects. Never mutates the knowledge base and never
/// drops steps.
RefineResult refine_sequence(const ActionSequence& seq,
                             const KnowledgeBase& kb, const Lexicon& lexicon,
                             const SchemaSet& schemas);

}  // namespace kgloop
