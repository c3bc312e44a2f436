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

#include <cctype>
#include <fstream>
#include <sstream>
#include <vector>

#include "kgloop/error.hpp"

namespace kgloop {
namespace {

enum class Tok { kPrefixDecl, kIriRef, kName, kBool, kString, kSemicolon,
                 kDot, kEnd };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_space();
    std::size_t line = line_, col = col_;
    if (pos_ >= text_.size()) return {Tok::kEnd, "", line, col};
    char c = text_[pos_];
    if (c == ';') {
      advance();
      return {Tok::kSemicolon, ";", line, col};
    }
    if (c == '.') {
      advance();
      return {Tok::kDot, ".", line, col};
    }
    if (c == '<') return iri_ref(line, col);
    if (c == '\'' || c == '"') return quoted(line, col);
    if (c == '@') {
      advance();
      std::string word = word_chars();
      if (word != "prefix") {
        throw SyntaxError("unsupported directive '@" + word + "'", line, col);
      }
      return {Tok::kPrefixDecl, "@prefix", line, col};
    }
    if (c == '_' && peek(1) == ':') {
      throw SyntaxError("blank nodes are not supported", line, col);
    }
    if (c == '[' || c == '(') {
      throw SyntaxError("blank nodes and collections are not supported", line,
                        col);
    }
    if (c == ',') {
      throw SyntaxError("object lists (',') are not supported", line, col);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::string word = word_chars();
      if (word == "true" || word == "false") {
        return {Tok::kBool, word, line, col};
      }
      if (word == "PREFIX") return {Tok::kPrefixDecl, word, line, col};
      if (word.find(':') == std::string::npos) {
        throw SyntaxError("expected prefixed name, got '" + word + "'", line,
                          col);
      }
      return {Tok::kName, word, line, col};
    }
    throw SyntaxError(std::string("unexpected character '") + c + "'", line,
                      col);
  }

 private:
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  std::string word_chars() {
    std::string out;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      auto u = static_cast<unsigned char>(c);
      if (std::isalnum(u) || c == '_' || c == '-' || c == ':') {
        out.push_back(c);
        advance();
      } else {
        break;
      }
    }
    return out;
  }

  Token iri_ref(std::size_t line, std::size_t col) {
    advance();
    std::string out;
    while (pos_ < text_.size() && text_[pos_] != '>') {
      if (std::isspace(static_cast<unsigned char>(text_[pos_]))) {
        throw SyntaxError("whitespace inside IRI reference", line_, col_);
      }
      out.push_back(text_[pos_]);
      advance();
    }
    if (pos_ >= text_.size()) {
      throw SyntaxError("unterminated IRI reference", line, col);
    }
    advance();
    return {Tok::kIriRef, out, line, col};
  }

  Token quoted(std::size_t line, std::size_t col) {
    char quote = text_[pos_];
    advance();
    std::string out;
    while (true) {
      if (pos_ >= text_.size() || text_[pos_] == '\n') {
        throw SyntaxError("unterminated string literal", line, col);
      }
      char c = text_[pos_];
      if (c == quote) {
        advance();
        break;
      }
      if (c == '\\') {
        advance();
        if (pos_ >= text_.size()) {
          throw SyntaxError("unterminated string literal", line, col);
        }
        char e = text_[pos_];
        switch (e) {
          case 'n': out.push_back('\n'); break;
          case 't': out.push_back('\t'); break;
          case '\\': case '\'': case '"': out.push_back(e); break;
          default:
            throw SyntaxError(std::string("unknown escape '\\") + e + "'",
                              line_, col_);
        }
        advance();
        continue;
      }
      out.push_back(c);
      advance();
    }
    return {Tok::kString, out, line, col};
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : lexer_(text), graph_(PrefixMap{}) {
    tok_ = lexer_.next();
  }

  Graph run() {
    while (tok_.kind != Tok::kEnd) {
      if (tok_.kind == Tok::kPrefixDecl) {
        prefix_decl();
      } else {
        statement();
      }
    }
    return std::move(graph_);
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw SyntaxError(what, tok_.line, tok_.column);
  }

  Token take(Tok kind, const char* what) {
    if (tok_.kind != kind) fail(std::string("expected ") + what);
    Token t = tok_;
    tok_ = lexer_.next();
    return t;
  }

  void prefix_decl() {
    bool sparql_style = tok_.text == "PREFIX";
    tok_ = lexer_.next();
    Token name = take(Tok::kName, "prefix name");
    if (name.text.back() != ':' ||
        name.text.find(':') != name.text.size() - 1) {
      throw SyntaxError("malformed prefix name '" + name.text + "'", name.line,
                        name.column);
    }
    Token iri = take(Tok::kIriRef, "<namespace IRI>");
    if (!sparql_style) take(Tok::kDot, "'.' after prefix declaration");
    graph_.declare_prefix(name.text.substr(0, name.text.size() - 1),
                          iri.text);
  }

  Term name_term(const Token& t) {
    auto colon = t.text.find(':');
    std::string prefix = t.text.substr(0, colon);
    std::string local = t.text.substr(colon + 1);
    if (!graph_.prefixes().contains(prefix)) throw UnknownPrefix(prefix);
    try {
      return Term::iri(prefix, local);
    } catch (const Error& e) {
      throw SyntaxError(e.what(), t.line, t.column);
    }
  }

  Term iri() {
    if (tok_.kind == Tok::kIriRef) {
      fail("full IRIs are only allowed in prefix declarations");
    }
    Token t = take(Tok::kName, "prefixed name");
    return name_term(t);
  }

  Term object() {
    switch (tok_.kind) {
      case Tok::kName: return iri();
      case Tok::kBool: {
        bool v = tok_.text == "true";
        tok_ = lexer_.next();
        return Term::boolean(v);
      }
      case Tok::kString: {
        std::string v = tok_.text;
        tok_ = lexer_.next();
        return Term::string(v);
      }
      default: fail("expected object (IRI, boolean or string)");
    }
  }

  void statement() {
    Term subject = iri();
    while (true) {
      Term predicate = iri();
      Term obj = object();
      graph_.insert(Triple{subject, predicate, obj});
      if (tok_.kind == Tok::kSemicolon) {
        tok_ = lexer_.next();
        // A trailing ';' before '.' is legal Turtle.
        if (tok_.kind == Tok::kDot) break;
        continue;
      }
      break;
    }
    take(Tok::kDot, "';' or '.'");
  }

  Lexer lexer_;
  Graph graph_;
  Token tok_;
};

}  // namespace

Graph parse_turtle(std::string_view text) { return Parser(text).run(); }

std::string serialize_turtle(const Graph& g) {
  std::string out;
  for (const auto& [name, iri] : g.prefixes()) {
    out += "@prefix " + name + ": <" + iri + "> .\n";
  }
  const Term* current = nullptr;
  for (const auto& t : g) {
    if (current == nullptr || *current != t.subject) {
      if (current != nullptr) out += " .\n";
      out += "\n" + t.subject.str() + " ";
      current = &t.subject;
    } else {
      out += " ;\n    ";
    }
    out += t.predicate.str() + " " + t.object.str();
  }
  if (current != nullptr) out += " .\n";
  return out;
}

Graph load_turtle(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_turtle(ss.str());
}

void save_turtle(const Graph& g, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << serialize_turtle(g);
}

}  // namespace kgloop
