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

#include <deque>
#include <fstream>
#include <sstream>

#include "kgloop/error.hpp"

namespace kgloop {
namespace {

const std::set<Category> kNoCategories;
const std::set<std::string> kNoWords;

}  // namespace

std::string_view to_string(Category c) {
  switch (c) {
    case Category::kObject: return "object";
    case Category::kAction: return "action";
    case Category::kTool: return "tool";
    case Category::kReceptacle: return "receptacle";
    case Category::kIngredient: return "ingredient";
  }
  return "unknown";
}

Category parse_category(std::string_view name) {
  if (name == "object") return Category::kObject;
  if (name == "action") return Category::kAction;
  if (name == "tool") return Category::kTool;
  if (name == "receptacle") return Category::kReceptacle;
  if (name == "ingredient") return Category::kIngredient;
  throw MalformedLexicon("unknown category '" + std::string(name) + "'");
}

void Lexicon::add(std::string word, std::set<Category> categories,
                  std::string hypernym) {
  if (word.empty()) throw MalformedLexicon("empty lexicon word");
  if (categories.empty()) {
    throw MalformedLexicon("word '" + word + "' has no category");
  }
  if (hypernym == word) {
    throw MalformedLexicon("word '" + word + "' is its own hypernym");
  }
  auto& entry = entries_[word];
  entry.categories.insert(categories.begin(), categories.end());
  if (!hypernym.empty()) {
    entry.hypernyms.insert(hypernym);
    entries_[hypernym].hyponyms.insert(word);
  }
}

void Lexicon::finalize() const {
  for (const auto& [word, entry] : entries_) {
    if (entry.categories.empty()) {
      throw MalformedLexicon("hypernym '" + word +
                             "' is referenced but has no entry");
    }
  }
  // Kahn's algorithm over hypernym edges.
  std::map<std::string_view, std::size_t> pending;
  std::deque<std::string_view> ready;
  for (const auto& [word, entry] : entries_) {
    pending[word] = entry.hypernyms.size();
    if (entry.hypernyms.empty()) ready.push_back(word);
  }
  std::size_t visited = 0;
  while (!ready.empty()) {
    auto word = ready.front();
    ready.pop_front();
    ++visited;
    for (const auto& child : find(word)->hyponyms) {
      if (--pending[child] == 0) ready.push_back(child);
    }
  }
  if (visited != entries_.size()) {
    throw MalformedLexicon("hypernym relation contains a cycle");
  }
}

const Lexicon::Entry* Lexicon::find(std::string_view word) const {
  auto it = entries_.find(word);
  return it == entries_.end() ? nullptr : &it->second;
}

bool Lexicon::contains(std::string_view word) const {
  const Entry* e = find(word);
  return e != nullptr && !e->categories.empty();
}

const std::set<Category>& Lexicon::categories(std::string_view word) const {
  const Entry* e = find(word);
  return e ? e->categories : kNoCategories;
}

bool Lexicon::has_category(std::string_view word, Category c) const {
  return categories(word).contains(c);
}

bool Lexicon::shares_category(std::string_view a, std::string_view b) const {
  const auto& ca = categories(a);
  const auto& cb = categories(b);
  for (Category c : ca) {
    if (cb.contains(c)) return true;
  }
  return false;
}

const std::set<std::string>& Lexicon::hypernyms(std::string_view word) const {
  const Entry* e = find(word);
  return e ? e->hypernyms : kNoWords;
}

const std::set<std::string>& Lexicon::hyponyms(std::string_view word) const {
  const Entry* e = find(word);
  return e ? e->hyponyms : kNoWords;
}

std::map<std::string, std::size_t> Lexicon::walk(std::string_view word,
                                                 bool upward) const {
  std::map<std::string, std::size_t> dist;
  std::deque<std::pair<std::string, std::size_t>> queue;
  queue.emplace_back(std::string(word), 0);
  while (!queue.empty()) {
    auto [current, d] = queue.front();
    queue.pop_front();
    const auto& next = upward ? hypernyms(current) : hyponyms(current);
    for (const auto& n : next) {
      if (n == word || dist.contains(n)) continue;
      dist.emplace(n, d + 1);
      queue.emplace_back(n, d + 1);
    }
  }
  return dist;
}

std::map<std::string, std::size_t> Lexicon::ancestors(
    std::string_view word) const {
  return walk(word, true);
}

std::map<std::string, std::size_t> Lexicon::descendants(
    std::string_view word) const {
  return walk(word, false);
}

std::string Lexicon::singular(std::string_view word) const {
  if (contains(word)) return std::string(word);
  auto try_stem = [&](std::size_t cut, std::string_view add) -> std::string {
    if (word.size() <= cut) return {};
    std::string stem(word.substr(0, word.size() - cut));
    stem += add;
    return contains(stem) ? stem : std::string{};
  };
  if (word.ends_with("ies")) {
    if (auto s = try_stem(3, "y"); !s.empty()) return s;
  }
  if (word.ends_with("es")) {
    if (auto s = try_stem(2, ""); !s.empty()) return s;
  }
  if (word.ends_with("s")) {
    if (auto s = try_stem(1, ""); !s.empty()) return s;
  }
  return std::string(word);
}

std::vector<std::string> Lexicon::words() const {
  std::vector<std::string> out;
  for (const auto& [word, entry] : entries_) out.push_back(word);
  return out;
}

Lexicon parse_lexicon(std::string_view text) {
  Lexicon lex;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    std::istringstream fields(line);
    std::string word, cats, hypernym, extra;
    if (!(fields >> word)) continue;
    if (!(fields >> cats >> hypernym) || (fields >> extra)) {
      throw MalformedLexicon("lexicon line " + std::to_string(number) +
                             ": expected 'word category hypernym'");
    }
    std::set<Category> categories;
    std::istringstream cat_list(cats);
    std::string cat;
    while (std::getline(cat_list, cat, ',')) {
      categories.insert(parse_category(cat));
    }
    lex.add(std::move(word), std::move(categories),
            hypernym == "-" ? std::string{} : std::move(hypernym));
  }
  lex.finalize();
  return lex;
}

Lexicon load_lexicon(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_lexicon(ss.str());
}

}  // namespace kgloop
