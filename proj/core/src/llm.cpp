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

#include "kgloop/llm.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "kgloop/error.hpp"

namespace kgloop {

const InContextExample& default_example() {
  static const InContextExample example{
      "make coffee",
      "1. move(kitchen)\n"
      "2. pick_up(mug)\n"
      "3. put_down(mug, coffee_machine)\n"
      "4. toggle_on(coffee_machine)\n"
      "5. pick_up(mug)\n"
      "6. serve(mug, table)"};
  return example;
}

PromptSpec make_prompt_spec(std::string task, const KnowledgeBase& kb,
                            const SchemaSet& schemas,
                            InContextExample example) {
  PromptSpec spec;
  spec.task = std::move(task);
  std::set<std::string> objects;
  for (const auto& t : kb.state.match(std::nullopt, vocab::obj_name(),
                                      std::nullopt)) {
    if (t.object.is_string() && t.object.value() != "agent") {
      objects.insert(t.object.value());
    }
  }
  spec.domain_objects.assign(objects.begin(), objects.end());
  spec.action_set = schemas.verbs();
  spec.example = std::move(example);
  return spec;
}

namespace {

std::string join(const std::vector<std::string>& words) {
  std::string out;
  for (const auto& w : words) {
    if (!out.empty()) out += ", ";
    out += w;
  }
  return out;
}

constexpr std::string_view kFormat =
    "Answer with the numbered action sequence only, one step per line, in the "
    "form `N. action(argument, ...)`, using only the listed actions and "
    "objects.";

}  // namespace

std::string build_initial_prompt(const PromptSpec& spec) {
  std::ostringstream out;
  out << "You are a household robot planner. Think step by step and decompose "
         "the task into a sequence of primitive actions.\n\n"
      << "Objects available: " << join(spec.domain_objects) << "\n"
      << "Actions available: " << join(spec.action_set) << "\n\n"
      << "Example task: " << spec.example.task << "\n"
      << "Example plan:\n"
      << spec.example.plan << "\n\n"
      << "Task: " << spec.task << "\n"
      << kFormat << "\n";
  return out.str();
}

std::string describe_problem(const Problem& problem) {
  if (const auto* m = std::get_if<Mismatch>(&problem)) {
    std::string step = "step " + std::to_string(m->step_index);
    switch (m->kind) {
      case MismatchKind::kUnknownAction:
        return "Problem: " + step + " uses the action \"" + m->token +
               "\" with " + std::to_string(m->arity) +
               " argument(s), which is not available.";
      case MismatchKind::kUnknownObject:
        return "Problem: " + step + " uses the object \"" + m->token +
               "\", which is not available.";
      case MismatchKind::kCapabilityViolation:
        return "Problem: " + step + " uses the object \"" + m->token +
               "\", which does not have the property " + m->capability + ".";
    }
  }
  const auto& e = std::get<ExecError>(problem);
  if (e.kind == ExecError::Kind::kGoalNotSatisfied) {
    return "Problem: the plan executed but the task was not completed (" +
           e.reason + ").";
  }
  return "Problem: step " + std::to_string(e.step) +
         " failed during execution (" + std::string(to_string(e.kind)) + ": " +
         e.reason + ").";
}

std::string build_feedback_prompt(const ActionSequence& prior,
                                  const Problem& problem) {
  std::ostringstream out;
  out << "Your previous plan was:\n"
      << render_plan(prior) << "\n\n"
      << describe_problem(problem) << "\n"
      << "Revise the plan so that the task can be completed.\n"
      << kFormat << "\n";
  return out.str();
}

std::size_t count_tokens(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::size_t n = 0;
  std::string word;
  while (in >> word) ++n;
  return n;
}

ScriptedClient::ScriptedClient(std::vector<std::string> replies)
    : replies_(std::move(replies)) {}

LlmReply ScriptedClient::call(const std::string& prompt) {
  if (cursor_ >= replies_.size()) throw ScriptExhausted(cursor_);
  const std::string& text = replies_[cursor_++];
  return LlmReply{text, count_tokens(prompt) + count_tokens(text)};
}

std::vector<std::string> parse_script(std::string_view text) {
  std::vector<std::string> blocks;
  std::vector<std::string> lines;
  auto flush = [&] {
    std::size_t first = 0;
    std::size_t last = lines.size();
    auto blank = [](const std::string& l) {
      return l.find_first_not_of(" \t\r") == std::string::npos;
    };
    while (first < last && blank(lines[first])) ++first;
    while (last > first && blank(lines[last - 1])) --last;
    if (first < last) {
      std::string block;
      for (std::size_t i = first; i < last; ++i) {
        if (!block.empty()) block += '\n';
        block += lines[i];
      }
      blocks.push_back(std::move(block));
    }
    lines.clear();
  };
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line == "---") {
      flush();
    } else {
      lines.push_back(line);
    }
  }
  flush();
  return blocks;
}

std::vector<std::string> load_script(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_script(ss.str());
}

}  // namespace kgloop
