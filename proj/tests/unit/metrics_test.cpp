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

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "kgloop/error.hpp"

namespace kgloop {
namespace {

TEST(Overlap, Values) {
  IngredientSet m{"egg", "milk", "butter"};
  EXPECT_DOUBLE_EQ(ingredient_overlap(m, m), 1.0);
  EXPECT_DOUBLE_EQ(ingredient_overlap(m, {"egg", "milk", "salt"}), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(ingredient_overlap(m, {}), 0.0);
  EXPECT_DOUBLE_EQ(ingredient_overlap({"egg"}, {"egg", "salt", "pepper"}), 1.0);
  EXPECT_THROW(ingredient_overlap({}, {"egg"}), EmptyGroundTruth);
}

TEST(Overlap, Mean) {
  EXPECT_DOUBLE_EQ(mean_ingredient_overlap(
                       {{{"a", "b", "c", "d"}, {"a", "b", "c"}}}),
                   0.75);
  EXPECT_DOUBLE_EQ(mean_ingredient_overlap({{{"a"}, {"a"}}, {{"a", "b"}, {}}}),
                   0.5);
  EXPECT_THROW(mean_ingredient_overlap({}), EmptyCorpus);
}

TEST(Extract, IngredientsOnly) {
  auto kb = testing::load_domain_kb("cooking");
  auto lex = testing::load_domain_lexicon("cooking");
  auto seq = parse_plan("1. pick_up(knife)\n2. slice(onion)\n3. crack(eggs, pan)\n"
                        "4. serve(egg, plate)");
  EXPECT_EQ(extract_ingredients(seq, kb, lex), (IngredientSet{"egg", "onion"}));
}

TEST(GroundTruthFile, Parses) {
  auto gt = parse_ground_truth("# r\nomelette: egg milk\n\npasta: pasta salt # x\n");
  EXPECT_EQ(gt.at("omelette"), (IngredientSet{"egg", "milk"}));
  EXPECT_EQ(gt.at("pasta"), (IngredientSet{"pasta", "salt"}));
  EXPECT_THROW(parse_ground_truth("omelette egg\n"), ConfigError);
  EXPECT_THROW(parse_ground_truth("a: x\na: y\n"), ConfigError);
  EXPECT_THROW(parse_ground_truth("a:\n"), ConfigError);
}

SessionRecord row(Configuration c, bool ok, std::size_t tokens,
                  std::optional<double> overlap) {
  SessionRecord r;
  r.id = "t";
  r.configuration = c;
  r.success = ok;
  r.tokens = tokens;
  r.overlap = overlap;
  return r;
}

TEST(Report, Aggregates) {
  auto report = build_report({row(Configuration::kLlmKg, true, 100, 1.0),
                              row(Configuration::kLlmKg, false, 50, 0.5),
                              row(Configuration::kLlmOnly, true, 30, std::nullopt)});
  ASSERT_EQ(report.aggregates.size(), 2u);
  EXPECT_EQ(report.aggregates[0].configuration, Configuration::kLlmOnly);
  const auto* kg = report.aggregate(Configuration::kLlmKg);
  ASSERT_NE(kg, nullptr);
  EXPECT_EQ(kg->sessions, 2u);
  EXPECT_EQ(kg->successes, 1u);
  EXPECT_DOUBLE_EQ(kg->success_rate, 0.5);
  EXPECT_DOUBLE_EQ(kg->average_tokens, 75.0);
  EXPECT_DOUBLE_EQ(*kg->mean_overlap, 0.75);
  EXPECT_FALSE(report.aggregate(Configuration::kLlmOnly)->mean_overlap);
  EXPECT_EQ(report.aggregate(Configuration::kLlmKgHuman), nullptr);
  EXPECT_THROW(build_report({}), EmptyCorpus);
}

TEST(Report, RendersEveryRow) {
  auto report = build_report({row(Configuration::kLlmKg, true, 100, 1.0),
                              row(Configuration::kLlmOnly, false, 30, 0.0)});
  std::string text = report.render_text();
  EXPECT_NE(text.find("LLM_KG"), std::string::npos);
  EXPECT_NE(text.find("1.0000"), std::string::npos);
  std::string json = report.to_json();
  EXPECT_NE(json.find("\"success_rate\": 1.0"), std::string::npos);
}

}  // namespace
}  // namespace kgloop
