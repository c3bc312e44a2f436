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

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "kgloop/error.hpp"

namespace kgloop {
namespace {

using testing::onion_kb;
using testing::turtle;

constexpr char kSchemas[] = R"({"schemas": [
  {"verb": "move", "arity": 1},
  {"verb": "pick_up", "arity": 1, "requires": [{"arg": 0, "capability": "Pickupable"}]},
  {"verb": "slice", "arity": 1, "requires": [{"arg": 0, "capability": "IsSliceable"}],
   "pre": [{"holding_capability": "CanCut"}],
   "effects": [{"target": "$0", "pred": "sliced", "value": true}]},
  {"verb": "fry", "arity": 2, "requires": [{"arg": 0, "capability": "Fryable"}]}
]})";

TEST(CapabilityMap, Parses) {
  auto m = parse_capability_map("# c\nIsSliceable=sliced\n Fryable = IsFried \n\n");
  EXPECT_EQ(m, (CapabilityStateMap{{"Fryable", "IsFried"}, {"IsSliceable", "sliced"}}));
  EXPECT_THROW(parse_capability_map("IsSliceable\n"), ConfigError);
  EXPECT_THROW(parse_capability_map("=sliced\n"), ConfigError);
}

TEST(Validate, AcceptsOnionKb) { EXPECT_NO_THROW(validate(onion_kb())); }

TEST(Validate, RejectsMissingLocation) {
  KnowledgeBase kb = onion_kb();
  kb.state.remove({vocab::ex("onion"), vocab::obj_location(), vocab::ex("fridge")});
  EXPECT_THROW(validate(kb), InvalidKnowledgeBase);
}

TEST(Validate, RejectsUngovernedStatePredicate) {
  KnowledgeBase kb = onion_kb();
  kb.state.insert({vocab::ex("onion"), vocab::ex("IsHot"), Term::boolean(false)});
  EXPECT_THROW(validate(kb), InvalidKnowledgeBase);
}

TEST(Validate, RejectsTwoTypes) {
  KnowledgeBase kb = onion_kb();
  kb.state.insert({vocab::ex("onion"), vocab::rdf_type(), vocab::ex("vegetable")});
  EXPECT_THROW(validate(kb), InvalidKnowledgeBase);
}

TEST(EntityExists, FindsInstanceByName) {
  auto ref = entity_exists(onion_kb(), "onion");
  EXPECT_EQ(ref.kind, EntityKind::kInstance);
  EXPECT_EQ(ref.iri, vocab::ex("onion"));
}

TEST(EntityExists, EmptyTokenIsAbsent) {
  EXPECT_FALSE(entity_exists(onion_kb(), ""));
}

TEST(EntityExists, ClassWithoutInstance) {
  KnowledgeBase kb = onion_kb();
  kb.attributes.insert({vocab::ex("carrot"), vocab::rdf_type(), vocab::ex("object")});
  auto ref = entity_exists(kb, "carrot");
  EXPECT_EQ(ref.kind, EntityKind::kClass);
  EXPECT_FALSE(instance_for(kb, "carrot"));
}

TEST(EntityExists, SkilletAbsentFromCookingFixture) {
  auto kb = testing::load_domain_kb("cooking");
  EXPECT_FALSE(entity_exists(kb, "skillet"));
  EXPECT_TRUE(entity_exists(kb, "pan"));
}

TEST(EntityExists, InstanceNamedDifferentlyFromItsIri) {
  KnowledgeBase kb = onion_kb();
  kb.state.insert({vocab::ex("onion_1"), vocab::rdf_type(), vocab::ex("object")});
  kb.state.insert({vocab::ex("onion_1"), vocab::obj_name(), Term::string("red_onion")});
  kb.state.insert({vocab::ex("onion_1"), vocab::obj_location(), vocab::ex("fridge")});
  auto ref = entity_exists(kb, "red_onion");
  EXPECT_EQ(ref.kind, EntityKind::kInstance);
  EXPECT_EQ(ref.iri, vocab::ex("onion_1"));
  EXPECT_EQ(name_of(kb, vocab::ex("onion_1")), "red_onion");
  EXPECT_EQ(name_of(kb, vocab::ex("counter")), "counter");
}

TEST(Capability, OnionIsSliceable) {
  EXPECT_TRUE(capability(onion_kb(), vocab::ex("onion"), "IsSliceable"));
}

TEST(Capability, AbsentPredicateIsFalse) {
  EXPECT_FALSE(capability(onion_kb(), vocab::ex("onion"), "Crackable"));
}

TEST(Capability, UnknownEntityThrows) {
  EXPECT_THROW(capability(onion_kb(), vocab::ex("skillet"), "IsSliceable"),
               UnknownEntity);
}

TEST(Capability, TruthTable) {
  KnowledgeBase kb = onion_kb();
  const std::vector<std::string> preds{"IsSliceable", "Fryable",
                                       "NeedsToBeCleaned", "CanCut",
                                       "Pickupable"};
  const std::map<std::string, std::vector<bool>> expected{
      {"onion", {true, true, true, false, false}},
      {"knife", {false, false, false, true, true}},
      {"fridge", {false, false, false, false, false}},
  };
  for (const auto& [entity, row] : expected) {
    for (std::size_t i = 0; i < preds.size(); ++i) {
      EXPECT_EQ(capability(kb, vocab::ex(entity), preds[i]), row[i])
          << entity << "." << preds[i];
    }
  }
}

TEST(EntityNames, Sorted) {
  EXPECT_EQ(entity_names(onion_kb()),
            (std::vector<std::string>{"fridge", "knife", "onion"}));
}

TEST(KnownCapabilities, MapKeysAndAttributeBooleans) {
  EXPECT_EQ(known_capabilities(onion_kb()),
            (std::vector<std::string>{"CanCut", "Fryable", "IsSliceable",
                                      "NeedsToBeCleaned", "Pickupable"}));
}

TEST(Feasibility, SliceOnionWithKnifePresent) {
  SchemaSet schemas = parse_schemas(kSchemas);
  EXPECT_EQ(feasibility(onion_kb(), schemas, Action{"slice", {"onion"}}),
            std::nullopt);
}

TEST(Feasibility, UnknownVerb) {
  SchemaSet schemas = parse_schemas(kSchemas);
  auto m = feasibility(onion_kb(), schemas, Action{"crack", {"onion"}}, 2);
  ASSERT_TRUE(m);
  EXPECT_EQ(m->kind, MismatchKind::kUnknownAction);
  EXPECT_EQ(m->token, "crack");
  EXPECT_EQ(m->step_index, 2u);
  EXPECT_EQ(m->arity, 1u);
}

TEST(Feasibility, WrongArityIsAnUnknownAction) {
  SchemaSet schemas = parse_schemas(kSchemas);
  auto m = feasibility(onion_kb(), schemas, Action{"slice", {"onion", "knife"}});
  ASSERT_TRUE(m);
  EXPECT_EQ(m->kind, MismatchKind::kUnknownAction);
  EXPECT_EQ(m->arity, 2u);
}

TEST(Feasibility, MissingCapability) {
  SchemaSet schemas = parse_schemas(kSchemas);
  auto m = feasibility(onion_kb(), schemas, Action{"slice", {"knife"}});
  ASSERT_TRUE(m);
  EXPECT_EQ(m->kind, MismatchKind::kCapabilityViolation);
  EXPECT_EQ(m->token, "knife");
  EXPECT_EQ(m->capability, "IsSliceable");
  EXPECT_EQ(m->arg_index, 0u);
}

TEST(Feasibility, NoCapabilityCheckOnUnknownObject) {
  SchemaSet schemas = parse_schemas(kSchemas);
  auto all = step_mismatches(onion_kb(), schemas,
                             Action{"fry", {"skillet", "wok"}}, 1);
  ASSERT_EQ(all.size(), 2u);
  EXPECT_EQ(all[0].kind, MismatchKind::kUnknownObject);
  EXPECT_EQ(all[0].token, "skillet");
  EXPECT_EQ(all[1].token, "wok");
  EXPECT_EQ(all[1].arg_index, 1u);
}

TEST(Feasibility, VerbReportedBeforeArguments) {
  SchemaSet schemas = parse_schemas(kSchemas);
  auto all = step_mismatches(onion_kb(), schemas, Action{"crack", {"egg"}}, 3);
  ASSERT_EQ(all.size(), 2u);
  EXPECT_EQ(all[0].kind, MismatchKind::kUnknownAction);
  EXPECT_EQ(all[1].kind, MismatchKind::kUnknownObject);
  EXPECT_EQ(all[1].token, "egg");
}

Expansion onion_expansion() {
  Expansion e;
  e.entity = "onion";
  e.type = "object";
  e.class_attributes = {{"IsSliceable", true}, {"Fryable", true},
                        {"NeedsToBeCleaned", true}};
  e.location = "fridge";
  e.instance_state = {{"sliced", false}, {"IsFried", false}, {"IsCleaned", false}};
  return e;
}

TEST(Expand, ReproducesOnionBlocks) {
  KnowledgeBase kb;
  kb.capability_states = testing::onion_capabilities();
  expand(kb, onion_expansion());
  EXPECT_TRUE(kb.attributes.same_triples(turtle(testing::kOnionClass)));
  EXPECT_TRUE(kb.state.same_triples(turtle(testing::kOnionInstance)));
  EXPECT_EQ(kb.stats(), (GraphStats{2, 11}));
}

TEST(Expand, LocationOnly) {
  KnowledgeBase kb;
  kb.capability_states = testing::onion_capabilities();
  GraphStats before = kb.stats();
  Expansion e;
  e.entity = "spatula";
  e.location = "drawer";
  expand(kb, e);
  EXPECT_EQ(kb.attributes.size(), 2u);
  EXPECT_EQ(kb.state.size(), 3u);
  EXPECT_TRUE(before.dominated_by(kb.stats()));
}

TEST(Expand, IsIdempotent) {
  KnowledgeBase once = apply_expansion(onion_kb(), onion_expansion());
  KnowledgeBase twice = apply_expansion(once, onion_expansion());
  EXPECT_TRUE(once.attributes.same_triples(twice.attributes));
  EXPECT_TRUE(once.state.same_triples(twice.state));
}

TEST(Expand, ExistingInstanceKeepsItsLocation) {
  Expansion e = onion_expansion();
  e.location = "counter";
  e.instance_state = {{"sliced", true}};
  KnowledgeBase kb = apply_expansion(onion_kb(), e);
  EXPECT_EQ(kb.state.object(vocab::ex("onion"), vocab::obj_location()),
            vocab::ex("fridge"));
  EXPECT_EQ(kb.state.object(vocab::ex("onion"), vocab::ex("sliced")),
            Term::boolean(true));
}

TEST(Expand, Rejections) {
  KnowledgeBase kb = onion_kb();
  Expansion e = onion_expansion();
  e.type = "vegetable";
  EXPECT_THROW(expand(kb, e), ConflictingType);
  e.override_type = true;
  EXPECT_NO_THROW(apply_expansion(kb, e));

  Expansion bad = onion_expansion();
  bad.entity = "two words";
  EXPECT_THROW(expand(kb, bad), InvalidExpansion);
  bad = onion_expansion();
  bad.location.clear();
  EXPECT_THROW(expand(kb, bad), InvalidExpansion);
  bad = onion_expansion();
  bad.class_attributes.push_back({"Juggleable", true});
  EXPECT_THROW(expand(kb, bad), InvalidExpansion);
  bad.introduces_predicates = true;
  EXPECT_NO_THROW(expand(kb, bad));
  bad = onion_expansion();
  bad.instance_state.push_back({"IsHot", true});
  EXPECT_THROW(expand(kb, bad), InvalidExpansion);
  bad = onion_expansion();
  bad.class_attributes.push_back({"obj_location", true});
  EXPECT_THROW(expand(kb, bad), InvalidExpansion);
}

TEST(Expand, MoppingClothAddsOneNode) {
  KnowledgeBase kb = testing::load_domain_kb("cleaning");
  GraphStats before = kb.stats();
  Expansion e;
  e.entity = "mopping_cloth";
  e.type = "tool";
  e.class_attributes = {{"CanMop", true}, {"CanWipe", true}, {"Pickupable", true}};
  e.location = "cabinet";
  e.introduces_predicates = true;
  std::size_t gk = kb.attributes.size();
  std::size_t gs = kb.state.size();
  expand(kb, e);
  std::size_t k = (kb.attributes.size() - gk) + (kb.state.size() - gs);
  EXPECT_EQ(k, 5u + 3u);
  EXPECT_EQ(kb.stats(), (GraphStats{before.nodes + 1, before.edges + k}));
}

}  // namespace
}  // namespace kgloop
