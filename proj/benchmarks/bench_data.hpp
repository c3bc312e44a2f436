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

#include "kgloop/knowledge.hpp"
#include "kgloop/lexicon.hpp"

namespace kgloop::bench {

inline std::filesystem::path domain_dir(const std::string& name) {
  return std::filesystem::path(KGLOOP_BENCH_DATA_DIR) / name;
}

inline KnowledgeBase cooking_kb() {
  auto d = domain_dir("cooking");
  return load_knowledge_base(d / "state.ttl", d / "attributes.ttl",
                             d / "capabilities.map");
}

inline constexpr char kOmelette[] =
    "Sure. Here is the plan:\n"
    "1. move(kitchen)\n2. pick_up(egg)\n3. put_down(egg, counter)\n"
    "4. pick_up(egg)\n5. crack(egg, pan)\n6. toggle_on(stove)\n"
    "7. fry(egg, pan)\n8. serve(egg, plate)\n";

}  // namespace kgloop::bench
