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

#include <algorithm>
#include <cctype>
#include <iterator>

#include "kgloop/error.hpp"

namespace kgloop {
namespace {

bool is_name_char(char c) {
  auto u = static_cast<unsigned char>(c);
  return std::isalnum(u) || c == '_' || c == '-';
}

bool valid_prefix(std::string_view p) {
  if (p.empty() || !std::isalpha(static_cast<unsigned char>(p.front()))) {
    return false;
  }
  return std::all_of(p.begin(), p.end(), is_name_char);
}

bool valid_local(std::string_view l) {
  return !l.empty() && std::all_of(l.begin(), l.end(), is_name_char);
}

std::string escape_string(std::string_view v) {
  std::string out;
  out.reserve(v.size() + 2);
  out.push_back('\'');
  for (char c : v) {
    switch (c) {
      case '\'': out += "\\'"; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out.push_back(c);
    }
  }
  out.push_back('\'');
  return out;
}

}  // namespace

Term Term::iri(std::string_view prefix, std::string_view local) {
  if (!valid_prefix(prefix)) {
    throw Error("invalid IRI prefix '" + std::string(prefix) + "'");
  }
  if (!valid_local(local)) {
    throw Error("invalid IRI local name '" + std::string(local) + "'");
  }
  std::string repr;
  repr.reserve(prefix.size() + local.size() + 1);
  repr.append(prefix).push_back(':');
  repr.append(local);
  return Term(TermKind::kIri, std::move(repr), std::string(local),
              prefix.size());
}

Term Term::curie(std::string_view curie) {
  auto colon = curie.find(':');
  if (colon == std::string_view::npos) {
    throw Error("expected prefix:local, got '" + std::string(curie) + "'");
  }
  return iri(curie.substr(0, colon), curie.substr(colon + 1));
}

Term Term::boolean(bool value) {
  std::string s = value ? "true" : "false";
  return Term(TermKind::kBool, s, s, 0);
}

Term Term::string(std::string_view value) {
  return Term(TermKind::kString, escape_string(value), std::string(value), 0);
}

std::string_view Term::prefix() const noexcept {
  if (!is_iri()) return {};
  return std::string_view(repr_).substr(0, colon_);
}

std::string_view Term::local() const noexcept {
  if (!is_iri()) return {};
  return std::string_view(repr_).substr(colon_ + 1);
}

PrefixMap standard_prefixes() {
  return PrefixMap{{"ex", std::string(ns::kEx)},
                   {"rdf", std::string(ns::kRdf)}};
}

void Graph::declare_prefix(std::string name, std::string iri) {
  prefixes_.insert_or_assign(std::move(name), std::move(iri));
}

void Graph::check_prefix(const Term& t) const {
  if (t.is_iri() && !prefixes_.contains(t.prefix())) {
    throw UnknownPrefix(std::string(t.prefix()));
  }
}

bool Graph::insert(const Triple& t) {
  check_prefix(t.subject);
  check_prefix(t.predicate);
  check_prefix(t.object);
  if (!t.subject.is_iri() || !t.predicate.is_iri()) {
    throw Error("subject and predicate must be IRIs");
  }
  return triples_.insert(t).second;
}

bool Graph::remove(const Triple& t) { return triples_.erase(t) > 0; }

bool Graph::set(const Term& s, const Term& p, const Term& o) {
  Triple wanted{s, p, o};
  auto existing = match(s, p, std::nullopt);
  if (existing.size() == 1 && existing.front() == wanted) return false;
  for (const auto& t : existing) triples_.erase(t);
  insert(wanted);
  return true;
}

std::optional<Term> Graph::object(const Term& s, const Term& p) const {
  auto [lo, hi] = triples_.equal_range(SubjectKey{s});
  for (auto it = lo; it != hi; ++it) {
    if (it->predicate == p) return it->object;
  }
  return std::nullopt;
}

std::vector<Term> Graph::objects(const Term& s, const Term& p) const {
  std::vector<Term> out;
  auto [lo, hi] = triples_.equal_range(SubjectKey{s});
  for (auto it = lo; it != hi; ++it) {
    if (it->predicate == p) out.push_back(it->object);
  }
  return out;
}

std::vector<Term> Graph::subjects() const {
  std::vector<Term> out;
  for (const auto& t : triples_) {
    if (out.empty() || out.back() != t.subject) out.push_back(t.subject);
  }
  return out;
}

std::vector<Triple> Graph::about(const Term& s) const {
  auto [lo, hi] = triples_.equal_range(SubjectKey{s});
  return {lo, hi};
}

std::vector<Triple> Graph::match(const Pattern& s, const Pattern& p,
                                 const Pattern& o) const {
  auto agrees = [&](const Triple& t) {
    return (!p || t.predicate == *p) && (!o || t.object == *o);
  };
  std::vector<Triple> out;
  if (s) {
    auto [lo, hi] = triples_.equal_range(SubjectKey{*s});
    std::copy_if(lo, hi, std::back_inserter(out), agrees);
  } else {
    std::copy_if(triples_.begin(), triples_.end(), std::back_inserter(out),
                 agrees);
  }
  return out;
}

std::vector<Triple> match(const Graph& g, const Pattern& s, const Pattern& p,
                          const Pattern& o) {
  return g.match(s, p, o);
}

bool ask(const Graph& g, const Triple& t) { return g.contains(t); }

GraphStats stats(const Graph& state, const Graph& attributes) {
  std::set<Term> predicates;
  std::set<Term> class_targets;
  std::set<Term> candidates;
  for (const Graph* g : {&state, &attributes}) {
    for (const auto& t : *g) {
      predicates.insert(t.predicate);
      if (t.predicate == vocab::rdf_type()) class_targets.insert(t.object);
      candidates.insert(t.subject);
      if (t.object.is_iri()) candidates.insert(t.object);
    }
  }
  std::size_t nodes = 0;
  for (const auto& term : candidates) {
    if (!predicates.contains(term) && !class_targets.contains(term)) ++nodes;
  }
  return {nodes, state.size() + attributes.size()};
}

namespace vocab {

Term ex(std::string_view local) { return Term::iri("ex", local); }

const Term& rdf_type() {
  static const Term t = Term::iri("rdf", "type");
  return t;
}

const Term& obj_name() {
  static const Term t = Term::iri("ex", "obj_name");
  return t;
}

const Term& obj_location() {
  static const Term t = Term::iri("ex", "obj_location");
  return t;
}

}  // namespace vocab
}  // namespace kgloop
