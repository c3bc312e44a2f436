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

#include "kgloop/lexicon.hpp"

#include <gtest/gtest.h>

#include "kgloop/error.hpp"

namespace kgloop {
namespace {

constexpr char kText[] =
    "# word categories hypernym\n"
    "cookware object,receptacle -\n"
    "pan object,receptacle cookware\n"
    "skillet object,receptacle cookware\n"
    "wok object,receptacle pan\n"
    "ingredient object,ingredient -\n"
    "egg object,ingredient ingredient\n"
    "tomato object,ingredient ingredient\n"
    "berry object,ingredient ingredient\n"
    "fry action -\n";

TEST(Lexicon, Parses) {
  Lexicon lex = parse_lexicon(kText);
  EXPECT_EQ(lex.size(), 9u);
  EXPECT_TRUE(lex.contains("skillet"));
  EXPECT_FALSE(lex.contains("spatula"));
  EXPECT_EQ(lex.hypernyms("skillet"), (std::set<std::string>{"cookware"}));
  EXPECT_EQ(lex.hyponyms("cookware"), (std::set<std::string>{"pan", "skillet"}));
  EXPECT_TRUE(lex.has_category("pan", Category::kReceptacle));
  EXPECT_TRUE(lex.shares_category("pan", "egg"));
  EXPECT_FALSE(lex.shares_category("fry", "egg"));
}

TEST(Lexicon, TransitiveDistances) {
  Lexicon lex = parse_lexicon(kText);
  EXPECT_EQ(lex.ancestors("wok"),
            (std::map<std::string, std::size_t>{{"cookware", 2}, {"pan", 1}}));
  EXPECT_EQ(lex.descendants("cookware"),
            (std::map<std::string, std::size_t>{
                {"pan", 1}, {"skillet", 1}, {"wok", 2}}));
}

TEST(Lexicon, Singular) {
  Lexicon lex = parse_lexicon(kText);
  EXPECT_EQ(lex.singular("eggs"), "egg");
  EXPECT_EQ(lex.singular("tomatoes"), "tomato");
  EXPECT_EQ(lex.singular("berries"), "berry");
  EXPECT_EQ(lex.singular("egg"), "egg");
  EXPECT_EQ(lex.singular("glasses"), "glasses");
}

TEST(Lexicon, Malformed) {
  EXPECT_THROW(parse_lexicon("pan object\n"), MalformedLexicon);
  EXPECT_THROW(parse_lexicon("pan gadget -\n"), MalformedLexicon);
  EXPECT_THROW(parse_lexicon("pan object pot\n"), MalformedLexicon);
  EXPECT_THROW(parse_lexicon("a object b\nb object a\n"), MalformedLexicon);
  EXPECT_THROW(parse_lexicon("a object a\n"), MalformedLexicon);
  EXPECT_THROW(parse_category("gadget"), MalformedLexicon);
}

TEST(Lexicon, CategoryNames) {
  for (Category c : {Category::kObject, Category::kAction, Category::kTool,
                     Category::kReceptacle, Category::kIngredient}) {
    EXPECT_EQ(parse_category(to_string(c)), c);
  }
}

}  // namespace
}  // namespace kgloop
