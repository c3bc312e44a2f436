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

#include "kgloop/refine.hpp"

#include <algorithm>
#include <set>
#include <tuple>

namespace kgloop {

std::vector<Mismatch> detect_mismatches(const ActionSequence& seq,
                                        const KnowledgeBase& kb,
                                        const SchemaSet& schemas) {
  std::vector<Mismatch> out;
  for (std::size_t i = 0; i < seq.steps.size(); ++i) {
    auto step = step_mismatches(kb, schemas, seq.steps[i], i + 1);
    out.insert(out.end(), step.begin(), step.end());
  }
  return out;
}

std::string_view to_string(MatchRule rule) {
  switch (rule) {
    case MatchRule::kExact: return "exact";
    case MatchRule::kSibling: return "sibling";
    case MatchRule::kHyponym: return "hyponym";
    case MatchRule::kHypernym: return "hypernym";
  }
  return "unknown";
}

namespace {

std::set<std::string> candidate_pool(const Mismatch& m,
                                     const KnowledgeBase& kb,
                                     const SchemaSet& schemas) {
  std::set<std::string> pool;
  switch (m.kind) {
    case MismatchKind::kUnknownAction:
      for (const auto& s : schemas.all()) {
        if (s.arity == m.arity) pool.insert(s.verb);
      }
      break;
    case MismatchKind::kUnknownObject:
      for (auto& n : entity_names(kb)) pool.insert(std::move(n));
      break;
    case MismatchKind::kCapabilityViolation:
      for (auto& n : entity_names(kb)) {
        auto ref = entity_exists(kb, n);
        if (ref && capability(kb, *ref.iri, m.capability)) {
          pool.insert(std::move(n));
        }
      }
      break;
  }
  return pool;
}

}  // namespace

std::optional<Replacement> propose(const Mismatch& m, const KnowledgeBase& kb,
                                   const Lexicon& lexicon,
                                   const SchemaSet& schemas) {
  if (!lexicon.contains(m.token)) return std::nullopt;
  auto pool = candidate_pool(m, kb, schemas);
  if (pool.contains(m.token)) return Replacement{m.token, MatchRule::kExact};

  // (tier, distance, word): smaller is better.
  using Rank = std::tuple<int, std::size_t, std::string>;
  std::optional<Rank> best;
  auto offer = [&](MatchRule rule, std::size_t distance,
                   const std::string& word) {
    if (word == m.token || !pool.contains(word) ||
        !lexicon.shares_category(m.token, word)) {
      return;
    }
    Rank r{static_cast<int>(rule), distance, word};
    if (!best || r < *best) best = std::move(r);
  };

  for (const auto& parent : lexicon.hypernyms(m.token)) {
    for (const auto& sibling : lexicon.hyponyms(parent)) {
      offer(MatchRule::kSibling, 1, sibling);
    }
  }
  for (const auto& [word, d] : lexicon.descendants(m.token)) {
    offer(MatchRule::kHyponym, d, word);
  }
  for (const auto& [word, d] : lexicon.ancestors(m.token)) {
    offer(MatchRule::kHypernym, d, word);
  }
  if (!best) return std::nullopt;
  return Replacement{std::get<2>(*best),
                     static_cast<MatchRule>(std::get<0>(*best))};
}

std::optional<std::string> propose_replacement(const Mismatch& m,
                                               const KnowledgeBase& kb,
                                               const Lexicon& lexicon,
                                               const SchemaSet& schemas) {
  auto r = propose(m, kb, lexicon, schemas);
  if (!r) return std::nullopt;
  return r->word;
}

RefineResult refine_sequence(const ActionSequence& seq,
                             const KnowledgeBase& kb, const Lexicon& lexicon,
                             const SchemaSet& schemas) {
  RefineResult result;
  result.refined = seq;
  result.refined.source = PlanSource::kRefined;
  auto& steps = result.refined.steps;

  // A verb repair can expose a capability check on the next round.
  const std::size_t max_rounds = 2 * steps.size() + 2;
  for (std::size_t round = 0; round < max_rounds; ++round) {
    bool changed = false;
    for (const auto& m : detect_mismatches(result.refined, kb, schemas)) {
      auto rep = propose(m, kb, lexicon, schemas);
      if (!rep || rep->word == m.token) continue;
      Action& action = steps[m.step_index - 1];
      std::string& slot = m.arg_index ? action.args[*m.arg_index] : action.verb;
      if (slot != m.token) continue;
      result.rewrites.push_back(
          Rewrite{m.step_index, m.arg_index, m.token, rep->word, rep->rule});
      slot = rep->word;
      changed = true;
    }
    if (!changed) break;
  }
  result.unresolved = detect_mismatches(result.refined, kb, schemas);
  return result;
}

}  // namespace kgloop
