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
#include <stdexcept>
#include <string>

namespace kgloop {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed Turtle input. Line and column are 1-based.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& message, std::size_t line, std::size_t column)
      : Error("line " + std::to_string(line) + ", column " +
              std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class UnknownPrefix : public Error {
 public:
  explicit UnknownPrefix(const std::string& prefix)
      : Error("undeclared prefix '" + prefix + "'"), prefix_(prefix) {}
  const std::string& prefix() const noexcept { return prefix_; }

 private:
  std::string prefix_;
};

class UnknownEntity : public Error {
 public:
  using Error::Error;
};

class ConflictingType : public Error {
 public:
  using Error::Error;
};

class InvalidKnowledgeBase : public Error {
 public:
  using Error::Error;
};

class InvalidExpansion : public Error {
 public:
  using Error::Error;
};

class EmptyPlan : public Error {
 public:
  EmptyPlan() : Error("no plan steps found in text") {}
};

class DuplicateVerb : public Error {
 public:
  explicit DuplicateVerb(const std::string& verb)
      : Error("duplicate action schema for verb '" + verb + "'") {}
};

class MalformedSchema : public Error {
 public:
  using Error::Error;
};

class MalformedLexicon : public Error {
 public:
  using Error::Error;
};

class ScriptExhausted : public Error {
 public:
  explicit ScriptExhausted(std::size_t calls)
      : Error("LLM script exhausted after " + std::to_string(calls) +
              " replies") {}
};

class TransportError : public Error {
 public:
  using Error::Error;
};

class InvalidAnswer : public Error {
 public:
  using Error::Error;
};

class EmptyGroundTruth : public Error {
 public:
  EmptyGroundTruth() : Error("ground-truth ingredient set is empty") {}
};

class EmptyCorpus : public Error {
 public:
  EmptyCorpus() : Error("corpus contains no entries") {}
};

/// Scenario, manifest or data file could not be read or is inconsistent.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace kgloop
