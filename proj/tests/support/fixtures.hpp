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

#include "kgloop/actionlang.hpp"
#include "kgloop/knowledge.hpp"
#include "kgloop/lexicon.hpp"
#include "kgloop/turtle.hpp"

namespace kgloop::testing {

inline std::filesystem::path data_dir() { return KGLOOP_TEST_DATA_DIR; }
inline std::filesystem::path oracle_dir() { return KGLOOP_TEST_ORACLE_DIR; }

inline constexpr std::string_view kPrefixes =
    "@prefix ex: <http://kgloop.dev/ns#> .\n"
    "@prefix rdf: <http://www.w3.org/1999/02/22-rdf-syntax-ns#> .\n";

// The onion node as printed: class block, then instance block.
inline constexpr std::string_view kOnionClass =
    "ex:onion rdf:type ex:object ;\n"
    "    ex:obj_name 'onion' ;\n"
    "    ex:IsSliceable true ;\n"
    "    ex:Fryable true ;\n"
    "    ex:NeedsToBeCleaned true .\n";

// As printed, with a stray '.' after ex:fridge.
inline constexpr std::string_view kOnionInstanceAsPrinted =
    "ex:onion rdf:type ex:object ;\n"
    "    ex:obj_name 'onion' ;\n"
    "    ex:obj_location ex:fridge .\n"
    "    ex:sliced false ;\n"
    "    ex:IsFried false ;\n"
    "    ex:IsCleaned false .\n";

inline constexpr std::string_view kOnionInstance =
    "ex:onion rdf:type ex:object ;\n"
    "    ex:obj_name 'onion' ;\n"
    "    ex:obj_location ex:fridge ;\n"
    "    ex:sliced false ;\n"
    "    ex:IsFried false ;\n"
    "    ex:IsCleaned false .\n";

inline Graph turtle(std::string_view body) {
  return parse_turtle(std::string(kPrefixes) + std::string(body));
}

inline CapabilityStateMap onion_capabilities() {
  return {{"Fryable", "IsFried"},
          {"IsSliceable", "sliced"},
          {"NeedsToBeCleaned", "IsCleaned"}};
}

// The onion node plus a fridge to keep it in and a knife to cut it with.
inline KnowledgeBase onion_kb() {
  KnowledgeBase kb;
  kb.attributes = turtle(std::string(kOnionClass) +
                         "ex:knife rdf:type ex:tool ;\n"
                         "    ex:obj_name 'knife' ;\n"
                         "    ex:Pickupable true ;\n"
                         "    ex:CanCut true .\n");
  kb.state = turtle(std::string(kOnionInstance) +
                    "ex:fridge rdf:type ex:appliance ;\n"
                    "    ex:obj_name 'fridge' ;\n"
                    "    ex:obj_location ex:kitchen .\n"
                    "ex:knife rdf:type ex:tool ;\n"
                    "    ex:obj_name 'knife' ;\n"
                    "    ex:obj_location ex:counter .\n");
  kb.capability_states = onion_capabilities();
  return kb;
}

inline KnowledgeBase load_domain_kb(const std::string& domain) {
  auto d = data_dir() / domain;
  return load_knowledge_base(d / "state.ttl", d / "attributes.ttl",
                             d / "capabilities.map");
}

inline SchemaSet load_domain_schemas(const std::string& domain) {
  return load_schemas(data_dir() / domain / "schemas.json");
}

inline Lexicon load_domain_lexicon(const std::string& domain) {
  return load_lexicon(data_dir() / domain / "lexicon.txt");
}

}  // namespace kgloop::testing
