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

#include <cstddef>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace kgloop {

enum class Category { kObject, kAction, kTool, kReceptacle, kIngredient };

std::string_view to_string(Category c);
/// Throws MalformedLexicon for unknown names.
Category parse_category(std::string_view name);

/// Word -> broader word edges (hypernyms) with category tags.
///
/// The edge set is a DAG; hyponyms are derived inverses. Each word carries
/// at least one category.
class Lexicon {
 public:
  /// One entry line: `word category[,category...] hypernym|-`.
  void add(std::string word, std::set<Category> categories,
           std::string hypernym = {});
  /// Checks that every hypernym is itself an entry and that the graph is
  /// acyclic. Throws MalformedLexicon.
  void finalize() const;

  bool contains(std::string_view word) const;
  const std::set<Category>& categories(std::string_view word) const;
  bool has_category(std::string_view word, Category c) const;
  bool shares_category(std::string_view a, std::string_view b) const;

  const std::set<std::string>& hypernyms(std::string_view word) const;
  const std::set<std::string>& hyponyms(std::string_view word) const;
  /// Transitive hypernyms with their shortest distance (>= 1).
  std::map<std::string, std::size_t> ancestors(std::string_view word) const;
  /// Transitive hyponyms with their shortest distance (>= 1).
  std::map<std::string, std::size_t> descendants(std::string_view word) const;

  /// `eggs` -> `egg`, `tomatoes` -> `tomato`, `berries` -> `berry` when the
  /// singular is an entry; otherwise the word unchanged.
  std::string singular(std::string_view word) const;

  std::size_t size() const noexcept { return entries_.size(); }
  std::vector<std::string> words() const;

 private:
  struct Entry {
    std::set<Category> categories;
    std::set<std::string> hypernyms;
    std::set<std::string> hyponyms;
  };
  const Entry* find(std::string_view word) const;
  std::map<std::string, std::size_t> walk(std::string_view word,
                                          bool upward) const;

  std::map<std::string, Entry, std::less<>> entries_;
};

Lexicon parse_lexicon(std::string_view text);
Lexicon load_lexicon(const std::filesystem::path& path);

}  // namespace kgloop
