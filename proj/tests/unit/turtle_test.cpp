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

#include "kgloop/turtle.hpp"

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "kgloop/error.hpp"

namespace kgloop {
namespace {

using testing::turtle;

TEST(Turtle, ClassBlockHasFiveTriples) {
  Graph g = turtle(testing::kOnionClass);
  EXPECT_EQ(g.size(), 5u);
  for (const auto& t : g) EXPECT_EQ(t.subject, vocab::ex("onion"));
}

TEST(Turtle, InstanceBlockHasSixTriples) {
  Graph g = turtle(testing::kOnionInstance);
  EXPECT_EQ(g.size(), 6u);
  EXPECT_EQ(g.object(vocab::ex("onion"), vocab::obj_location()),
            vocab::ex("fridge"));
  auto sliced = g.object(vocab::ex("onion"), vocab::ex("sliced"));
  ASSERT_TRUE(sliced);
  EXPECT_TRUE(sliced->is_bool());
  EXPECT_FALSE(sliced->as_bool());
}

TEST(Turtle, StrayTerminatorInInstanceBlockIsASyntaxError) {
  try {
    turtle(testing::kOnionInstanceAsPrinted);
    FAIL() << "expected SyntaxError";
  } catch (const SyntaxError& e) {
    // The dangling `ex:sliced false ;` line after the early '.'.
    EXPECT_EQ(e.line(), 6u);
  }
}

TEST(Turtle, PrefixesOnly) {
  EXPECT_TRUE(turtle("").empty());
  EXPECT_TRUE(parse_turtle("PREFIX ex: <http://kgloop.dev/ns#>\n").empty());
}

TEST(Turtle, CommentsAndQuotes) {
  Graph g = turtle(
      "# a comment\n"
      "ex:a ex:obj_name \"double\" ; # trailing\n"
      "    ex:IsOn true .\n"
      "ex:b ex:obj_name 'it\\'s' .\n");
  EXPECT_EQ(g.size(), 3u);
  EXPECT_EQ(g.object(vocab::ex("b"), vocab::obj_name())->value(), "it's");
}

TEST(Turtle, Rejections) {
  EXPECT_THROW(turtle("ex:a ex:p ex:b"), SyntaxError);
  EXPECT_THROW(turtle("ex:a ex:p ex:b , ex:c ."), SyntaxError);
  EXPECT_THROW(turtle("_:b0 ex:p ex:c ."), SyntaxError);
  EXPECT_THROW(turtle("ex:a ex:p 'unterminated ."), SyntaxError);
  EXPECT_THROW(turtle("foo:a ex:p ex:c ."), UnknownPrefix);
}

TEST(Turtle, SyntaxErrorReportsPosition) {
  try {
    turtle("ex:a ex:p ex:b .\nex:c ex:p ? .\n");
    FAIL() << "expected SyntaxError";
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.line(), 4u);
    EXPECT_EQ(e.column(), 11u);
  }
}

TEST(Turtle, SerializeEmptyGraph) {
  EXPECT_EQ(serialize_turtle(Graph{}), std::string(testing::kPrefixes));
}

TEST(Turtle, SerializeIsCanonical) {
  Graph g = turtle(
      "ex:pan ex:obj_location ex:cabinet ; ex:obj_name 'pan' .\n"
      "ex:egg ex:obj_name 'egg' ; ex:obj_location ex:fridge .\n");
  EXPECT_EQ(serialize_turtle(g), std::string(testing::kPrefixes) +
                                     "\n"
                                     "ex:egg ex:obj_location ex:fridge ;\n"
                                     "    ex:obj_name 'egg' .\n"
                                     "\n"
                                     "ex:pan ex:obj_location ex:cabinet ;\n"
                                     "    ex:obj_name 'pan' .\n");
}

TEST(Turtle, RoundTrip) {
  Graph g = turtle(testing::kOnionClass);
  Graph back = parse_turtle(serialize_turtle(g));
  EXPECT_TRUE(back.same_triples(g));
  EXPECT_EQ(serialize_turtle(back), serialize_turtle(g));
}

TEST(Turtle, BundledFixturesAreFixpoints) {
  for (const char* d : {"cooking", "cleaning", "onion"}) {
    for (const char* f : {"state.ttl", "attributes.ttl"}) {
      Graph g = load_turtle(testing::data_dir() / d / f);
      std::string once = serialize_turtle(g);
      EXPECT_EQ(serialize_turtle(parse_turtle(once)), once) << d << "/" << f;
    }
  }
}

}  // namespace
}  // namespace kgloop
