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
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kgloop/actionlang.hpp"
#include "kgloop/knowledge.hpp"
#include "kgloop/lexicon.hpp"
#include "kgloop/session.hpp"

namespace kgloop {

using IngredientSet = std::set<std::string>;

/// |m ∩ l| / |m|. Throws EmptyGroundTruth when m is empty.
double ingredient_overlap(const IngredientSet& m, const IngredientSet& l);

/// Arithmetic mean of per-recipe overlaps. Throws EmptyCorpus when empty.
double mean_ingredient_overlap(
    const std::vector<std::pair<IngredientSet, IngredientSet>>& pairs);

/// Singularized argument words tagged as ingredients, either in the lexicon
/// or by an rdf:type of ex:ingredient on their class.
IngredientSet extract_ingredients(const ActionSequence& seq,
                                  const KnowledgeBase& kb,
                                  const Lexicon& lexicon);

using GroundTruth = std::map<std::string, IngredientSet>;

/// Lines `id: word word ...`; `#` starts a comment.
GroundTruth parse_ground_truth(std::string_view text);
GroundTruth load_ground_truth(const std::filesystem::path& path);

/// Result of one terminal session.
struct SessionRecord {
  std::string id;
  Configuration configuration = Configuration::kLlmKgHuman;
  bool success = false;
  Phase phase = Phase::kFailed;
  std::string failure_cause;
  std::size_t feedback = 0;
  std::size_t tokens = 0;
  std::optional<double> overlap;
  GraphStats before;
  GraphStats after;
  std::vector<std::string> expanded;

  friend bool operator==(const SessionRecord&, const SessionRecord&) = default;
};

/// l_i is taken from the last plan sent to the simulator, or the current
/// plan if none was. `ground_truth` may be null.
SessionRecord summarize(std::string id, const Session& session,
                        const Lexicon& lexicon, const GroundTruth* ground_truth,
                        const std::string& recipe);

struct ConfigurationSummary {
  Configuration configuration = Configuration::kLlmKgHuman;
  std::size_t sessions = 0;
  std::size_t successes = 0;
  double success_rate = 0.0;
  double average_tokens = 0.0;
  std::optional<double> mean_overlap;
  /// Knowledge-base stats after the configuration's last session.
  GraphStats final_stats;

  friend bool operator==(const ConfigurationSummary&,
                         const ConfigurationSummary&) = default;
};

struct CorpusReport {
  std::vector<SessionRecord> rows;
  /// In configuration order, only those present in `rows`.
  std::vector<ConfigurationSummary> aggregates;

  const ConfigurationSummary* aggregate(Configuration c) const;
  /// Fixed-width table of rows followed by the aggregate table.
  std::string render_text() const;
  std::string to_json() const;
};

/// Throws EmptyCorpus when `rows` is empty.
CorpusReport build_report(std::vector<SessionRecord> rows);

}  // namespace kgloop
