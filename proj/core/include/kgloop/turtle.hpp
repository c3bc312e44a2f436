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

#include <filesystem>
#include <string>
#include <string_view>

#include "kgloop/triplestore.hpp"

namespace kgloop {

/// Parses the Turtle subset used for knowledge graphs:
///
///   @prefix ex: <http://kgloop.dev/ns#> .
///   ex:onion rdf:type ex:object ;
///       ex:obj_name 'onion' ;
///       ex:IsSliceable true .
///
/// Supported: `@prefix` / `PREFIX` declarations, subject blocks with
/// `;`-separated predicate-object pairs ending in `.`, prefixed-name IRIs,
/// bare `true`/`false`, quoted strings and `#` comments. Blank nodes,
/// collections, object lists and datatyped literals are rejected.
///
/// Throws SyntaxError (with line/column) or UnknownPrefix.
Graph parse_turtle(std::string_view text);

/// Canonical form: prefix declarations in name order, then one block per
/// subject with predicates and objects sorted. parse_turtle() inverts it.
std::string serialize_turtle(const Graph& g);

Graph load_turtle(const std::filesystem::path& path);
void save_turtle(const Graph& g, const std::filesystem::path& path);

}  // namespace kgloop
