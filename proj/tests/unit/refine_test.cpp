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

#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"

namespace kgloop {
namespace {

class CookingRefine : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    kb_ = new KnowledgeBase(testing::load_domain_kb("cooking"));
    schemas_ = new SchemaSet(testing::load_domain_schemas("cooking"));
    lexicon_ = new Lexicon(testing::load_domain_lexicon("cooking"));
  }
  static void TearDownTestSuite() {
    delete kb_;
    delete schemas_;
    delete lexicon_;
  }

  static RefineResult refine(const std::string& plan) {
    return refine_sequence(parse_plan(plan), *kb_, *lexicon_, *schemas_);
  }

  static KnowledgeBase* kb_;
  static SchemaSet* schemas_;
  static Lexicon* lexicon_;
};

KnowledgeBase* CookingRefine::kb_ = nullptr;
SchemaSet* CookingRefine::schemas_ = nullptr;
Lexicon* CookingRefine::lexicon_ = nullptr;

constexpr char kOmelette[] =
    "1. move(kitchen)\n2. pick_up(egg)\n3. crack(egg, pan)\n"
    "4. toggle_on(stove)\n5. fry(egg, pan)\n6. serve(egg, plate)";

TEST_F(CookingRefine, FeasiblePlanHasNoMismatches) {
  EXPECT_TRUE(detect_mismatches(parse_plan(kOmelette), *kb_, *schemas_).empty());
}

TEST_F(CookingRefine, DetectsUnknownObject) {
  auto ms = detect_mismatches(parse_plan("1. move(kitchen)\n2. fry(egg, skillet)"),
                              *kb_, *schemas_);
  ASSERT_EQ(ms.size(), 1u);
  EXPECT_EQ(ms[0].kind, MismatchKind::kUnknownObject);
  EXPECT_EQ(ms[0].token, "skillet");
  EXPECT_EQ(ms[0].step_index, 2u);
  EXPECT_EQ(ms[0].arg_index, 1u);
}

TEST_F(CookingRefine, DetectsVerbBeforeArguments) {
  auto ms = detect_mismatches(parse_plan("1. saute(egg, skillet)"), *kb_, *schemas_);
  ASSERT_EQ(ms.size(), 2u);
  EXPECT_EQ(ms[0].kind, MismatchKind::kUnknownAction);
  EXPECT_EQ(ms[0].token, "saute");
  EXPECT_EQ(ms[1].token, "skillet");
}

TEST_F(CookingRefine, ProposesSiblingForSkillet) {
  Mismatch m{MismatchKind::kUnknownObject, "skillet", 1, 1, "", 0};
  auto r = propose(m, *kb_, *lexicon_, *schemas_);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->word, "pan");
  EXPECT_EQ(r->rule, MatchRule::kSibling);
  EXPECT_EQ(propose_replacement(m, *kb_, *lexicon_, *schemas_), "pan");
}

TEST_F(CookingRefine, ProposesHypernyms) {
  Mismatch obj{MismatchKind::kUnknownObject, "scallion", 1, 0, "", 0};
  auto r = propose(obj, *kb_, *lexicon_, *schemas_);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->word, "onion");
  EXPECT_EQ(r->rule, MatchRule::kHypernym);

  Mismatch verb{MismatchKind::kUnknownAction, "saute", 1, std::nullopt, "", 2};
  r = propose(verb, *kb_, *lexicon_, *schemas_);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->word, "fry");
}

TEST_F(CookingRefine, VerbArityLimitsCandidates) {
  Mismatch verb{MismatchKind::kUnknownAction, "saute", 1, std::nullopt, "", 1};
  EXPECT_FALSE(propose(verb, *kb_, *lexicon_, *schemas_));
}

TEST_F(CookingRefine, ExactWhenTokenIsInPool) {
  Mismatch m{MismatchKind::kUnknownObject, "pan", 1, 0, "", 0};
  auto r = propose(m, *kb_, *lexicon_, *schemas_);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->rule, MatchRule::kExact);
}

TEST_F(CookingRefine, NoLexiconEntryNoProposal) {
  Mismatch m{MismatchKind::kUnknownObject, "griddle", 1, 1, "", 0};
  EXPECT_FALSE(propose(m, *kb_, *lexicon_, *schemas_));
}

TEST_F(CookingRefine, CategoryMustBeShared) {
  // A knife is a sibling-free tool; an ingredient cannot stand in for it.
  Mismatch m{MismatchKind::kCapabilityViolation, "knife", 1, 0, "Crackable", 0};
  EXPECT_FALSE(propose(m, *kb_, *lexicon_, *schemas_));
}

TEST_F(CookingRefine, IdentityOnFeasiblePlan) {
  auto r = refine(kOmelette);
  EXPECT_EQ(r.refined, parse_plan(kOmelette));
  EXPECT_EQ(r.refined.source, PlanSource::kRefined);
  EXPECT_TRUE(r.unresolved.empty());
  EXPECT_TRUE(r.rewrites.empty());
}

TEST_F(CookingRefine, RewritesSkilletAndSaute) {
  auto r = refine("1. pick_up(egg)\n2. crack(egg, skillet)\n3. saute(egg, skillet)");
  EXPECT_EQ(render_plan(r.refined),
            "1. pick_up(egg)\n2. crack(egg, pan)\n3. fry(egg, pan)");
  EXPECT_TRUE(r.unresolved.empty());
  ASSERT_EQ(r.rewrites.size(), 3u);
  EXPECT_EQ(r.rewrites[0], (Rewrite{2, 1, "skillet", "pan", MatchRule::kSibling}));
  EXPECT_EQ(r.rewrites[1],
            (Rewrite{3, std::nullopt, "saute", "fry", MatchRule::kHypernym}));
  EXPECT_EQ(r.rewrites[2], (Rewrite{3, 1, "skillet", "pan", MatchRule::kSibling}));
}

TEST_F(CookingRefine, LeavesUnknownEntityUnresolved) {
  auto r = refine("1. pick_up(griddle)\n2. move(kitchen)");
  EXPECT_EQ(r.refined, parse_plan("1. pick_up(griddle)\n2. move(kitchen)"));
  ASSERT_EQ(r.unresolved.size(), 1u);
  EXPECT_EQ(r.unresolved[0].token, "griddle");
  EXPECT_EQ(r.refined.size(), 2u);
}

TEST(Refine, MoppingClothIsUnresolvedInCleaning) {
  auto kb = testing::load_domain_kb("cleaning");
  auto r = refine_sequence(parse_plan("1. pick_up(mopping_cloth)\n2. mop(floor)"),
                           kb, testing::load_domain_lexicon("cleaning"),
                           testing::load_domain_schemas("cleaning"));
  ASSERT_FALSE(r.unresolved.empty());
  EXPECT_EQ(r.unresolved[0].token, "mopping_cloth");
}

TEST_F(CookingRefine, Idempotent) {
  std::mt19937 rng(7);
  const std::vector<std::string> verbs{"pick_up", "saute", "crack", "fry",
                                       "cook", "boil", "serve", "stir"};
  const std::vector<std::string> words{"egg", "skillet", "pan", "scallion",
                                       "griddle", "plate", "wok", "onion",
                                       "saucepan", "knife"};
  for (int i = 0; i < 100; ++i) {
    ActionSequence seq;
    std::size_t n = 1 + rng() % 6;
    for (std::size_t s = 0; s < n; ++s) {
      Action a{verbs[rng() % verbs.size()], {}};
      std::size_t k = 1 + rng() % 2;
      for (std::size_t j = 0; j < k; ++j) a.args.push_back(words[rng() % words.size()]);
      seq.steps.push_back(a);
    }
    auto once = refine_sequence(seq, *kb_, *lexicon_, *schemas_);
    auto twice = refine_sequence(once.refined, *kb_, *lexicon_, *schemas_);
    EXPECT_EQ(twice.refined, once.refined);
    EXPECT_TRUE(twice.rewrites.empty());
    EXPECT_EQ(twice.unresolved, once.unresolved);
    EXPECT_EQ(once.refined.size(), seq.size());
  }
}

}  // namespace
}  // namespace kgloop
