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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace kgloop {

enum class TermKind : std::uint8_t { kIri, kBool, kString };

/// An RDF term restricted to prefixed IRIs, booleans and plain strings.
///
/// Terms compare by their serialized Turtle form, which gives the canonical
/// ordering used for sorting graphs and rendering deterministic output.
class Term {
 public:
  /// Builds `prefix:local`. Throws kgloop::Error if either part is not a
  /// valid name (local names must be non-empty and free of whitespace).
  static Term iri(std::string_view prefix, std::string_view local);
  /// Parses a compact `prefix:local` name.
  static Term curie(std::string_view curie);
  static Term boolean(bool value);
  static Term string(std::string_view value);

  TermKind kind() const noexcept { return kind_; }
  bool is_iri() const noexcept { return kind_ == TermKind::kIri; }
  bool is_bool() const noexcept { return kind_ == TermKind::kBool; }
  bool is_string() const noexcept { return kind_ == TermKind::kString; }

  /// Prefix part of an IRI; empty for literals.
  std::string_view prefix() const noexcept;
  /// Local part of an IRI; empty for literals.
  std::string_view local() const noexcept;
  /// Boolean value. Only meaningful when is_bool().
  bool as_bool() const noexcept { return repr_ == "true"; }
  /// Unescaped contents of a string literal, local name of an IRI, or
  /// "true"/"false".
  const std::string& value() const noexcept { return value_; }

  /// Serialized Turtle form: `ex:onion`, `true`, `'onion'`.
  const std::string& str() const noexcept { return repr_; }

  friend bool operator==(const Term& a, const Term& b) noexcept {
    return a.repr_ == b.repr_;
  }
  friend std::strong_ordering operator<=>(const Term& a,
                                          const Term& b) noexcept {
    return a.repr_.compare(b.repr_) <=> 0;
  }

 private:
  Term(TermKind kind, std::string repr, std::string value, std::size_t colon)
      : kind_(kind),
        repr_(std::move(repr)),
        value_(std::move(value)),
        colon_(colon) {}

  TermKind kind_;
  std::string repr_;
  std::string value_;
  std::size_t colon_ = 0;
};

struct Triple {
  Term subject;
  Term predicate;
  Term object;

  friend bool operator==(const Triple&, const Triple&) = default;
  friend auto operator<=>(const Triple&, const Triple&) = default;
};

/// Subject-only key for heterogeneous lookups into a triple set.
struct SubjectKey {
  const Term& subject;
};

struct TripleLess {
  using is_transparent = void;
  bool operator()(const Triple& a, const Triple& b) const { return a < b; }
  bool operator()(const Triple& a, const SubjectKey& b) const {
    return a.subject < b.subject;
  }
  bool operator()(const SubjectKey& a, const Triple& b) const {
    return a.subject < b.subject;
  }
};

using PrefixMap = std::map<std::string, std::string, std::less<>>;
using Pattern = std::optional<Term>;

namespace ns {
inline constexpr std::string_view kEx = "http://kgloop.dev/ns#";
inline constexpr std::string_view kRdf =
    "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
}  // namespace ns

/// `ex:` and `rdf:` bound to their standard namespaces.
PrefixMap standard_prefixes();

/// A set of triples plus the prefix table used to write them.
///
/// Set semantics: inserting a triple that is already present is a no-op.
/// Every IRI stored must use a declared prefix.
class Graph {
 public:
  using TripleSet = std::set<Triple, TripleLess>;
  using const_iterator = TripleSet::const_iterator;

  Graph() : Graph(standard_prefixes()) {}
  explicit Graph(PrefixMap prefixes) : prefixes_(std::move(prefixes)) {}

  const PrefixMap& prefixes() const noexcept { return prefixes_; }
  void declare_prefix(std::string name, std::string iri);

  /// Returns true if the graph changed. Throws UnknownPrefix if a term uses
  /// an undeclared prefix.
  bool insert(const Triple& t);
  /// Returns true if the triple was present.
  bool remove(const Triple& t);
  bool contains(const Triple& t) const { return triples_.contains(t); }

  /// Replaces every (s, p, *) triple with the single triple (s, p, o).
  /// Returns true if the graph changed.
  bool set(const Term& s, const Term& p, const Term& o);
  /// First object of (s, p, *) in canonical order.
  std::optional<Term> object(const Term& s, const Term& p) const;
  std::vector<Term> objects(const Term& s, const Term& p) const;

  /// Distinct subjects in canonical order.
  std::vector<Term> subjects() const;
  /// All triples with the given subject, canonical order.
  std::vector<Triple> about(const Term& s) const;

  std::vector<Triple> match(const Pattern& s, const Pattern& p,
                            const Pattern& o) const;

  std::size_t size() const noexcept { return triples_.size(); }
  bool empty() const noexcept { return triples_.empty(); }
  const TripleSet& triples() const noexcept { return triples_; }
  const_iterator begin() const { return triples_.begin(); }
  const_iterator end() const { return triples_.end(); }

  /// Equality on triple sets only; prefix tables are ignored.
  bool same_triples(const Graph& other) const {
    return triples_ == other.triples_;
  }

 private:
  void check_prefix(const Term& t) const;

  PrefixMap prefixes_;
  TripleSet triples_;
};

/// Triple-pattern query: unbound positions match anything. Result is in
/// canonical order.
std::vector<Triple> match(const Graph& g, const Pattern& s, const Pattern& p,
                          const Pattern& o);

bool ask(const Graph& g, const Triple& t);

struct GraphStats {
  std::size_t nodes = 0;
  std::size_t edges = 0;

  friend bool operator==(const GraphStats&, const GraphStats&) = default;
  /// Componentwise: a <= b when both counts are no larger.
  bool dominated_by(const GraphStats& other) const {
    return nodes <= other.nodes && edges <= other.edges;
  }
};

/// (#nodes, #edges) over a state graph and an attribute graph.
///
/// Edges are all triples of both graphs. Nodes are the distinct IRIs that
/// occur as subject or object, minus every IRI used as a predicate and
/// every rdf:type target (class scaffolding such as ex:object).
GraphStats stats(const Graph& state, const Graph& attributes);

namespace vocab {
Term ex(std::string_view local);
const Term& rdf_type();
const Term& obj_name();
const Term& obj_location();
}  // namespace vocab

}  // namespace kgloop
