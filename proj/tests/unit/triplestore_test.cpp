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

#include "kgloop/triplestore.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

#include "fixtures.hpp"
#include "kgloop/error.hpp"

namespace kgloop {
namespace {

using testing::turtle;

Triple T(std::string_view s, std::string_view p, Term o) {
  return {Term::curie(s), Term::curie(p), std::move(o)};
}

TEST(Term, IriParts) {
  Term t = Term::curie("ex:onion");
  EXPECT_TRUE(t.is_iri());
  EXPECT_EQ(t.prefix(), "ex");
  EXPECT_EQ(t.local(), "onion");
  EXPECT_EQ(t.str(), "ex:onion");
  EXPECT_EQ(t, vocab::ex("onion"));
}

TEST(Term, Literals) {
  EXPECT_EQ(Term::boolean(true).str(), "true");
  EXPECT_TRUE(Term::boolean(true).as_bool());
  EXPECT_FALSE(Term::boolean(false).as_bool());
  Term s = Term::string("onion");
  EXPECT_TRUE(s.is_string());
  EXPECT_EQ(s.value(), "onion");
  EXPECT_EQ(s.str(), "'onion'");
  EXPECT_NE(Term::string("true"), Term::boolean(true));
}

TEST(Term, RejectsBadNames) {
  EXPECT_THROW(Term::iri("ex", ""), Error);
  EXPECT_THROW(Term::iri("ex", "two words"), Error);
  EXPECT_THROW(Term::curie("nocolon"), Error);
}

TEST(Graph, MatchBySubjectAndPredicate) {
  Graph g = turtle(testing::kOnionClass);
  auto hits = g.match(Term::curie("ex:onion"), Term::curie("ex:IsSliceable"),
                      std::nullopt);
  ASSERT_EQ(hits.size(), 1u);
  EXPECT_EQ(hits[0], T("ex:onion", "ex:IsSliceable", Term::boolean(true)));
}

TEST(Graph, UnboundMatchReturnsEverything) {
  Graph g = turtle(testing::kOnionClass);
  auto all = g.match(std::nullopt, std::nullopt, std::nullopt);
  EXPECT_EQ(all.size(), g.size());
  EXPECT_EQ(std::set<Triple>(all.begin(), all.end()),
            std::set<Triple>(g.begin(), g.end()));
}

TEST(Graph, MatchByPredicateAgreesWithScan) {
  Graph g = turtle(
      "ex:egg rdf:type ex:ingredient ; ex:obj_location ex:fridge .\n"
      "ex:pan rdf:type ex:cookware ; ex:obj_location ex:cabinet .\n"
      "ex:stove rdf:type ex:appliance ; ex:obj_location ex:kitchen ;"
      " ex:IsOn false .\n");
  std::vector<Triple> scan;
  for (const auto& t : g) {
    if (t.predicate == vocab::obj_location()) scan.push_back(t);
  }
  EXPECT_EQ(g.match(std::nullopt, vocab::obj_location(), std::nullopt), scan);
  EXPECT_EQ(scan.size(), 3u);
}

TEST(Graph, Ask) {
  Graph g = turtle(testing::kOnionClass);
  EXPECT_TRUE(ask(g, T("ex:onion", "ex:Fryable", Term::boolean(true))));
  EXPECT_FALSE(ask(g, T("ex:onion", "ex:Fryable", Term::boolean(false))));
  EXPECT_FALSE(ask(Graph{}, T("ex:onion", "ex:Fryable", Term::boolean(true))));
}

Triple random_triple(std::mt19937& rng) {
  std::uniform_int_distribution<int> d(0, 5);
  Term o = d(rng) % 2 == 0 ? Term::boolean(d(rng) % 2 == 0)
                           : vocab::ex("o" + std::to_string(d(rng)));
  return {vocab::ex("s" + std::to_string(d(rng))),
          vocab::ex("p" + std::to_string(d(rng) % 3)), o};
}

TEST(Graph, AskAgreesWithFullScan) {
  std::mt19937 rng(7);
  Graph g;
  for (int i = 0; i < 40; ++i) g.insert(random_triple(rng));
  auto all = g.match(std::nullopt, std::nullopt, std::nullopt);
  for (int i = 0; i < 100; ++i) {
    Triple t = random_triple(rng);
    bool scanned = std::find(all.begin(), all.end(), t) != all.end();
    EXPECT_EQ(ask(g, t), scanned);
  }
}

TEST(Graph, InsertIsIdempotent) {
  Graph g;
  Triple t = T("ex:egg", "ex:Crackable", Term::boolean(true));
  EXPECT_TRUE(g.insert(t));
  EXPECT_FALSE(g.insert(t));
  EXPECT_EQ(g.size(), 1u);
}

TEST(Graph, RemoveUndoesInsert) {
  Graph g = turtle(testing::kOnionClass);
  Graph before = g;
  Triple t = T("ex:egg", "ex:Crackable", Term::boolean(true));
  g.insert(t);
  EXPECT_TRUE(g.remove(t));
  EXPECT_FALSE(g.remove(t));
  EXPECT_TRUE(g.same_triples(before));
}

TEST(Graph, InterleavedEditsMatchReferenceSet) {
  std::mt19937 rng(42);
  Graph g;
  std::set<Triple> ref;
  for (int i = 0; i < 50; ++i) {
    Triple t = random_triple(rng);
    if (rng() % 3 == 0) {
      EXPECT_EQ(g.remove(t), ref.erase(t) == 1);
    } else {
      EXPECT_EQ(g.insert(t), ref.insert(t).second);
    }
  }
  EXPECT_EQ(std::set<Triple>(g.begin(), g.end()), ref);
}

TEST(Graph, SetReplacesAllObjects) {
  Graph g = turtle("ex:egg ex:obj_location ex:fridge .\n");
  EXPECT_TRUE(g.set(vocab::ex("egg"), vocab::obj_location(), vocab::ex("pan")));
  EXPECT_FALSE(g.set(vocab::ex("egg"), vocab::obj_location(), vocab::ex("pan")));
  EXPECT_EQ(g.objects(vocab::ex("egg"), vocab::obj_location()),
            std::vector<Term>{vocab::ex("pan")});
}

TEST(Graph, UndeclaredPrefixIsRejected) {
  Graph g;
  EXPECT_THROW(g.insert({Term::curie("foo:a"), vocab::obj_name(),
                         Term::string("a")}),
               UnknownPrefix);
}

TEST(Stats, EmptyGraphs) {
  EXPECT_EQ(stats(Graph{}, Graph{}), (GraphStats{0, 0}));
}

TEST(Stats, OnionPair) {
  // Qualifying IRIs: ex:onion and ex:fridge. ex:object is a class target.
  Graph gk = turtle(testing::kOnionClass);
  Graph gs = turtle(testing::kOnionInstance);
  EXPECT_EQ(stats(gs, gk), (GraphStats{2, 11}));
}

TEST(Stats, BundledFixturesMatchIndependentScan) {
  EXPECT_EQ(testing::load_domain_kb("cooking").stats(), (GraphStats{44, 396}));
  EXPECT_EQ(testing::load_domain_kb("cleaning").stats(), (GraphStats{32, 215}));
}

TEST(Stats, Domination) {
  EXPECT_TRUE((GraphStats{1, 2}).dominated_by({1, 3}));
  EXPECT_FALSE((GraphStats{2, 2}).dominated_by({1, 3}));
}

}  // namespace
}  // namespace kgloop
