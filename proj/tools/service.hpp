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

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "kgloop/session.hpp"

namespace httplib {
class Server;
}

namespace kgloop::service {

struct HostedSession;

/// Thrown by Service operations; carries the HTTP status to report.
class ServiceError : public std::runtime_error {
 public:
  ServiceError(int status, const std::string& what)
      : std::runtime_error(what), status_(status) {}
  int status() const noexcept { return status_; }

 private:
  int status_;
};

nlohmann::json snapshot_json(const Snapshot& s);
nlohmann::json query_json(const HumanQuery& q);

/// Parses `{"kind": "...", "value": "..."}`. Throws ServiceError(400).
HumanAnswer parse_answer(const nlohmann::json& body);

/// Hosts interactive sessions. Each session runs on its own worker thread
/// and blocks in AwaitingHuman until an answer is posted, unless it was
/// created with `"oracle": "scripted"`.
class Service {
 public:
  /// Relative scenario paths in payloads resolve against `root`.
  explicit Service(std::filesystem::path root = std::filesystem::current_path());
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  /// Payload keys: "scenario" (path), "configuration", "fmax", "oracle".
  std::string create(const nlohmann::json& payload);
  nlohmann::json snapshot(const std::string& id) const;
  nlohmann::json answer(const std::string& id, const nlohmann::json& body);
  nlohmann::json kg(const std::string& id) const;
  std::string progress(const std::string& id) const;
  /// Events with seq >= from, blocking up to `wait` for at least one when
  /// none is available yet. `done` is set once the session is terminal and
  /// every event has been returned.
  std::vector<Event> events_from(const std::string& id, std::size_t from,
                                 std::chrono::milliseconds wait,
                                 bool& done) const;
  /// Blocks until the session is terminal or waiting for a human.
  void wait_idle(const std::string& id) const;

  /// Registers every endpoint on `server`.
  void mount(httplib::Server& server);
  /// Stops all workers. Called by the destructor.
  void shutdown();

 private:
  std::shared_ptr<HostedSession> find(const std::string& id) const;

  std::filesystem::path root_;
  mutable std::mutex mu_;
  std::map<std::string, std::shared_ptr<HostedSession>> sessions_;
  std::uint64_t next_id_ = 1;
};

/// Formats one event as a server-sent event frame.
std::string sse_frame(const Event& e);

}  // namespace kgloop::service
