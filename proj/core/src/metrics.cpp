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

#include "kgloop/metrics.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "kgloop/error.hpp"

namespace kgloop {

double ingredient_overlap(const IngredientSet& m, const IngredientSet& l) {
  if (m.empty()) throw EmptyGroundTruth();
  std::size_t common = 0;
  for (const auto& w : m) common += l.contains(w) ? 1 : 0;
  return static_cast<double>(common) / static_cast<double>(m.size());
}

double mean_ingredient_overlap(
    const std::vector<std::pair<IngredientSet, IngredientSet>>& pairs) {
  if (pairs.empty()) throw EmptyCorpus();
  double sum = 0.0;
  for (const auto& [m, l] : pairs) sum += ingredient_overlap(m, l);
  return sum / static_cast<double>(pairs.size());
}

IngredientSet extract_ingredients(const ActionSequence& seq,
                                  const KnowledgeBase& kb,
                                  const Lexicon& lexicon) {
  const Term ingredient = vocab::ex("ingredient");
  auto tagged = [&](const std::string& w) {
    if (lexicon.has_category(w, Category::kIngredient)) return true;
    auto ref = entity_exists(kb, w);
    if (!ref) return false;
    auto cls = ref.kind == EntityKind::kClass ? ref.iri : class_of(kb, *ref.iri);
    return cls && kb.attributes.object(*cls, vocab::rdf_type()) == ingredient;
  };
  IngredientSet out;
  for (const auto& action : seq.steps) {
    for (const auto& arg : action.args) {
      std::string w = lexicon.singular(arg);
      if (tagged(w)) out.insert(std::move(w));
    }
  }
  return out;
}

GroundTruth parse_ground_truth(std::string_view text) {
  GroundTruth gt;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto colon = line.find(':');
    if (colon == std::string::npos) {
      throw ConfigError("ground truth line " + std::to_string(number) +
                        ": expected 'id: ingredient ...'");
    }
    std::istringstream id_in(line.substr(0, colon));
    std::string id;
    id_in >> id;
    std::istringstream words(line.substr(colon + 1));
    IngredientSet m;
    for (std::string w; words >> w;) m.insert(w);
    if (id.empty() || m.empty()) {
      throw ConfigError("ground truth line " + std::to_string(number) +
                        ": needs an id and at least one ingredient");
    }
    if (!gt.emplace(id, std::move(m)).second) {
      throw ConfigError("duplicate ground truth id '" + id + "'");
    }
  }
  return gt;
}

GroundTruth load_ground_truth(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_ground_truth(ss.str());
}

SessionRecord summarize(std::string id, const Session& session,
                        const Lexicon& lexicon, const GroundTruth* ground_truth,
                        const std::string& recipe) {
  SessionRecord r;
  r.id = std::move(id);
  r.configuration = session.config().configuration;
  r.success = session.succeeded();
  r.phase = session.phase();
  r.failure_cause = session.failure_cause();
  r.feedback = session.feedback_count();
  r.tokens = session.tokens();
  r.before = session.initial_stats();
  r.after = session.kb().stats();
  for (const auto& x : session.expansions()) r.expanded.push_back(x.entity);
  if (ground_truth != nullptr && !recipe.empty()) {
    auto it = ground_truth->find(recipe);
    if (it == ground_truth->end()) {
      throw ConfigError("no ground truth for recipe '" + recipe + "'");
    }
    IngredientSet m;
    for (const auto& w : it->second) m.insert(lexicon.singular(w));
    const ActionSequence& seq = session.executed_plan()
                                    ? *session.executed_plan()
                                    : session.plan();
    r.overlap = ingredient_overlap(m, extract_ingredients(seq, session.kb(),
                                                          lexicon));
  }
  return r;
}

const ConfigurationSummary* CorpusReport::aggregate(Configuration c) const {
  for (const auto& a : aggregates) {
    if (a.configuration == c) return &a;
  }
  return nullptr;
}

CorpusReport build_report(std::vector<SessionRecord> rows) {
  if (rows.empty()) throw EmptyCorpus();
  CorpusReport report;
  report.rows = std::move(rows);
  for (Configuration c : all_configurations()) {
    ConfigurationSummary s;
    s.configuration = c;
    double tokens = 0.0;
    double overlap_sum = 0.0;
    std::size_t overlap_n = 0;
    for (const auto& r : report.rows) {
      if (r.configuration != c) continue;
      ++s.sessions;
      s.successes += r.success ? 1 : 0;
      tokens += static_cast<double>(r.tokens);
      if (r.overlap) {
        overlap_sum += *r.overlap;
        ++overlap_n;
      }
      s.final_stats = r.after;
    }
    if (s.sessions == 0) continue;
    s.success_rate =
        static_cast<double>(s.successes) / static_cast<double>(s.sessions);
    s.average_tokens = tokens / static_cast<double>(s.sessions);
    if (overlap_n > 0) s.mean_overlap = overlap_sum / static_cast<double>(overlap_n);
    report.aggregates.push_back(s);
  }
  return report;
}

namespace {

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string stats_cell(const GraphStats& s) {
  return "(" + std::to_string(s.nodes) + ", " + std::to_string(s.edges) + ")";
}

std::string table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> widths;
  for (const auto& row : rows) {
    widths.resize(std::max(widths.size(), row.size()), 0);
    for (std::size_t c = 0; c < row.size(); ++c) {
      widths[c] = std::max(widths[c], row[c].size());
    }
  }
  std::string out;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::string line;
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      if (c > 0) line += "  ";
      line += rows[r][c];
      line.append(widths[c] - rows[r][c].size(), ' ');
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + "\n";
    if (r == 0) {
      std::size_t total = 0;
      for (std::size_t w : widths) total += w;
      out += std::string(total + 2 * (widths.size() - 1), '-') + "\n";
    }
  }
  return out;
}

}  // namespace

std::string CorpusReport::render_text() const {
  std::vector<std::vector<std::string>> per_task{
      {"task", "configuration", "success", "phase", "F", "tokens", "overlap",
       "kg_before", "kg_after", "cause"}};
  for (const auto& r : rows) {
    per_task.push_back({r.id, std::string(to_string(r.configuration)),
                        r.success ? "yes" : "no",
                        std::string(to_string(r.phase)),
                        std::to_string(r.feedback), std::to_string(r.tokens),
                        r.overlap ? fixed(*r.overlap, 4) : "-",
                        stats_cell(r.before), stats_cell(r.after),
                        r.failure_cause.empty() ? "-" : r.failure_cause});
  }
  std::vector<std::vector<std::string>> agg{
      {"configuration", "sessions", "successes", "success_rate", "avg_tokens",
       "mean_overlap", "final_kg"}};
  for (const auto& a : aggregates) {
    agg.push_back({std::string(to_string(a.configuration)),
                   std::to_string(a.sessions), std::to_string(a.successes),
                   fixed(a.success_rate, 4), fixed(a.average_tokens, 2),
                   a.mean_overlap ? fixed(*a.mean_overlap, 4) : "-",
                   stats_cell(a.final_stats)});
  }
  return table(per_task) + "\n" + table(agg);
}

std::string CorpusReport::to_json() const {
  using nlohmann::ordered_json;
  auto stats_json = [](const GraphStats& s) {
    return ordered_json{{"nodes", s.nodes}, {"edges", s.edges}};
  };
  ordered_json j;
  j["rows"] = ordered_json::array();
  for (const auto& r : rows) {
    ordered_json row;
    row["id"] = r.id;
    row["configuration"] = to_string(r.configuration);
    row["success"] = r.success;
    row["phase"] = to_string(r.phase);
    row["cause"] = r.failure_cause;
    row["F"] = r.feedback;
    row["tokens"] = r.tokens;
    row["overlap"] = r.overlap ? ordered_json(*r.overlap) : ordered_json();
    row["kg_before"] = stats_json(r.before);
    row["kg_after"] = stats_json(r.after);
    row["expanded"] = r.expanded;
    j["rows"].push_back(std::move(row));
  }
  j["aggregates"] = ordered_json::array();
  for (const auto& a : aggregates) {
    ordered_json agg;
    agg["configuration"] = to_string(a.configuration);
    agg["sessions"] = a.sessions;
    agg["successes"] = a.successes;
    agg["success_rate"] = a.success_rate;
    agg["average_tokens"] = a.average_tokens;
    agg["mean_overlap"] =
        a.mean_overlap ? ordered_json(*a.mean_overlap) : ordered_json();
    agg["final_kg"] = stats_json(a.final_stats);
    j["aggregates"].push_back(std::move(agg));
  }
  return j.dump(2) + "\n";
}

}  // namespace kgloop
