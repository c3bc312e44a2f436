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

#include "service.hpp"

#include <condition_variable>
#include <thread>

#include <httplib.h>

#include "kgloop/error.hpp"
#include "kgloop/scenario.hpp"
#include "kgloop/simulator.hpp"
#include "kgloop/turtle.hpp"

namespace kgloop::service {

using nlohmann::json;
using nlohmann::ordered_json;

struct HostedSession {
  mutable std::mutex mu;
  mutable std::condition_variable cv;
  ScenarioInputs inputs;
  std::unique_ptr<ScriptedClient> client;
  std::optional<Session> session;
  std::optional<OracleScript> oracle;
  std::thread worker;
  bool stopping = false;

  bool idle() const {
    return session->terminal() || session->phase() == Phase::kAwaitingHuman;
  }

  void work() {
    std::unique_lock lk(mu);
    while (!stopping && !session->terminal()) {
      if (session->phase() == Phase::kAwaitingHuman) {
        if (oracle) {
          auto a = oracle->next();
          if (!a) {
            session->abort("oracle_exhausted");
          } else {
            try {
              session->submit_answer(*a);
            } catch (const InvalidAnswer&) {
              session->abort("invalid_oracle_answer");
            }
          }
          cv.notify_all();
          continue;
        }
        cv.notify_all();
        cv.wait(lk, [&] {
          return stopping || session->phase() != Phase::kAwaitingHuman;
        });
        continue;
      }
      session->step();
      cv.notify_all();
    }
    cv.notify_all();
  }
};

namespace {

ordered_json mismatch_json(const Mismatch& m) {
  ordered_json j;
  j["kind"] = to_string(m.kind);
  j["token"] = m.token;
  j["step"] = m.step_index;
  if (m.arg_index) j["arg"] = *m.arg_index;
  if (!m.capability.empty()) j["capability"] = m.capability;
  if (m.kind == MismatchKind::kUnknownAction) j["arity"] = m.arity;
  return j;
}

ordered_json stats_json(const GraphStats& s) {
  return ordered_json{{"nodes", s.nodes}, {"edges", s.edges}};
}

}  // namespace

json query_json(const HumanQuery& q) {
  ordered_json j;
  j["kind"] = to_string(q.kind);
  j["token"] = q.token;
  if (!q.slot.empty()) j["slot"] = q.slot;
  j["slot_type"] = to_string(q.slot_type);
  if (q.context) j["mismatch"] = mismatch_json(*q.context);
  return j;
}

json snapshot_json(const Snapshot& s) {
  ordered_json j;
  j["task"] = s.task;
  j["configuration"] = to_string(s.configuration);
  j["phase"] = to_string(s.phase);
  j["F"] = s.f;
  j["F_max"] = s.f_max;
  j["plan"] = render_plan(s.plan);
  j["unresolved"] = ordered_json::array();
  for (const auto& m : s.unresolved) j["unresolved"].push_back(mismatch_json(m));
  if (s.exec_error) {
    j["exec_error"] = ordered_json{{"kind", to_string(s.exec_error->kind)},
                                   {"step", s.exec_error->step},
                                   {"reason", s.exec_error->reason}};
  } else {
    j["exec_error"] = nullptr;
  }
  j["pending_query"] = s.pending_query ? ordered_json(query_json(*s.pending_query))
                                       : ordered_json();
  j["kg_initial"] = stats_json(s.initial_stats);
  j["kg"] = stats_json(s.stats);
  j["tokens"] = s.tokens;
  j["replies_consumed"] = s.replies.size();
  j["failure_cause"] = s.failure_cause;
  j["events"] = s.events.size();
  return j;
}

HumanAnswer parse_answer(const json& body) {
  if (!body.is_object() || !body.contains("kind") || !body["kind"].is_string()) {
    throw ServiceError(400, "answer needs a string \"kind\"");
  }
  HumanAnswer::Kind kind;
  try {
    kind = parse_answer_kind(body["kind"].get<std::string>());
  } catch (const InvalidAnswer& e) {
    throw ServiceError(400, e.what());
  }
  bool needs_value = kind == HumanAnswer::Kind::kCorrection ||
                     kind == HumanAnswer::Kind::kValue;
  if (needs_value != body.contains("value")) {
    throw ServiceError(400, needs_value ? "answer needs a \"value\""
                                        : "this answer takes no \"value\"");
  }
  std::string value;
  if (needs_value) {
    const auto& v = body["value"];
    if (v.is_string()) {
      value = v.get<std::string>();
    } else if (v.is_boolean()) {
      value = v.get<bool>() ? "true" : "false";
    } else {
      throw ServiceError(400, "\"value\" must be a string or boolean");
    }
  }
  return HumanAnswer{kind, value};
}

std::string sse_frame(const Event& e) {
  return "id: " + std::to_string(e.seq) + "\nevent: " + e.type +
         "\ndata: " + e.to_json() + "\n\n";
}

Service::Service(std::filesystem::path root) : root_(std::move(root)) {}

Service::~Service() { shutdown(); }

void Service::shutdown() {
  std::map<std::string, std::shared_ptr<HostedSession>> all;
  {
    std::lock_guard lk(mu_);
    all = sessions_;
  }
  for (auto& [id, h] : all) {
    {
      std::lock_guard lk(h->mu);
      h->stopping = true;
    }
    h->cv.notify_all();
    if (h->worker.joinable()) h->worker.join();
  }
}

std::string Service::create(const json& payload) {
  if (!payload.is_object() || !payload.contains("scenario") ||
      !payload["scenario"].is_string()) {
    throw ServiceError(400, "payload needs a string \"scenario\" path");
  }
  auto h = std::make_shared<HostedSession>();
  std::optional<std::size_t> f_max;
  Configuration c = Configuration::kLlmKgHuman;
  try {
    std::filesystem::path path = payload["scenario"].get<std::string>();
    if (path.is_relative()) path = root_ / path;
    h->inputs = load_inputs(load_scenario(path));
    if (h->inputs.spec.configuration) c = *h->inputs.spec.configuration;
    if (payload.contains("configuration")) {
      c = parse_configuration(payload["configuration"].get<std::string>());
    }
    if (payload.contains("fmax")) f_max = payload["fmax"].get<std::size_t>();
    if (payload.value("oracle", std::string{"human"}) == "scripted") {
      h->oracle = h->inputs.oracle;
    }
  } catch (const Error& e) {
    throw ServiceError(400, e.what());
  } catch (const json::exception& e) {
    throw ServiceError(400, e.what());
  }
  h->client = std::make_unique<ScriptedClient>(h->inputs.script);
  h->session.emplace(Session::start(make_config(h->inputs.spec, c, f_max),
                                    h->inputs.kb, h->inputs.domain, *h->client,
                                    h->inputs.spec.task));
  std::string id;
  {
    std::lock_guard lk(mu_);
    id = "s" + std::to_string(next_id_++);
    sessions_[id] = h;
  }
  h->worker = std::thread([h] { h->work(); });
  return id;
}

std::shared_ptr<HostedSession> Service::find(const std::string& id) const {
  std::lock_guard lk(mu_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw ServiceError(404, "no session '" + id + "'");
  return it->second;
}

json Service::snapshot(const std::string& id) const {
  auto h = find(id);
  std::lock_guard lk(h->mu);
  return snapshot_json(h->session->snapshot());
}

json Service::answer(const std::string& id, const json& body) {
  auto h = find(id);
  HumanAnswer a = parse_answer(body);
  std::lock_guard lk(h->mu);
  if (h->session->phase() != Phase::kAwaitingHuman) {
    throw ServiceError(409, "session is " +
                                std::string(to_string(h->session->phase())) +
                                ", not AwaitingHuman");
  }
  try {
    h->session->submit_answer(a);
  } catch (const InvalidAnswer& e) {
    throw ServiceError(400, e.what());
  }
  h->cv.notify_all();
  return snapshot_json(h->session->snapshot());
}

json Service::kg(const std::string& id) const {
  auto h = find(id);
  std::lock_guard lk(h->mu);
  const Session& s = *h->session;
  ordered_json j;
  j["initial"] = stats_json(s.initial_stats());
  j["stats"] = stats_json(s.kb().stats());
  j["entities"] = entity_names(s.kb());
  j["expanded"] = ordered_json::array();
  for (const auto& x : s.expansions()) j["expanded"].push_back(x.entity);
  j["state_graph"] = serialize_turtle(s.kb().state);
  j["attribute_graph"] = serialize_turtle(s.kb().attributes);
  return j;
}

std::string Service::progress(const std::string& id) const {
  auto h = find(id);
  std::lock_guard lk(h->mu);
  const auto& t = h->session->last_trace();
  return t ? render_progress(*t) : std::string{};
}

std::vector<Event> Service::events_from(const std::string& id, std::size_t from,
                                        std::chrono::milliseconds wait,
                                        bool& done) const {
  auto h = find(id);
  std::unique_lock lk(h->mu);
  auto ready = [&] {
    return h->session->events().size() > from || h->session->terminal() ||
           h->stopping;
  };
  h->cv.wait_for(lk, wait, ready);
  const auto& all = h->session->events();
  std::vector<Event> out;
  for (std::size_t i = from; i < all.size(); ++i) out.push_back(all[i]);
  done = h->session->terminal() || h->stopping;
  return out;
}

void Service::wait_idle(const std::string& id) const {
  auto h = find(id);
  std::unique_lock lk(h->mu);
  h->cv.wait(lk, [&] { return h->stopping || h->idle(); });
}

void Service::mount(httplib::Server& server) {
  auto send_json = [](httplib::Response& res, const json& j, int status = 200) {
    res.status = status;
    res.set_content(j.dump(), "application/json");
  };
  auto guarded = [send_json](auto fn) {
    return [fn, send_json](const httplib::Request& req, httplib::Response& res) {
      try {
        fn(req, res);
      } catch (const ServiceError& e) {
        send_json(res, json{{"error", e.what()}}, e.status());
      } catch (const json::exception& e) {
        send_json(res, json{{"error", e.what()}}, 400);
      } catch (const std::logic_error& e) {
        send_json(res, json{{"error", e.what()}}, 400);
      }
    };
  };
  auto body_json = [](const httplib::Request& req) {
    try {
      return json::parse(req.body);
    } catch (const json::parse_error& e) {
      throw ServiceError(400, std::string("malformed JSON: ") + e.what());
    }
  };

  server.Post("/sessions", guarded([this, send_json, body_json](
                                       const httplib::Request& req,
                                       httplib::Response& res) {
    std::string id = create(body_json(req));
    send_json(res, json{{"id", id}}, 201);
  }));
  server.Get(R"(/sessions/([^/]+))",
             guarded([this, send_json](const httplib::Request& req,
                                       httplib::Response& res) {
               send_json(res, snapshot(req.matches[1]));
             }));
  server.Post(R"(/sessions/([^/]+)/answer)",
              guarded([this, send_json, body_json](const httplib::Request& req,
                                                   httplib::Response& res) {
                std::string id = req.matches[1];
                find(id);
                send_json(res, answer(id, body_json(req)));
              }));
  server.Get(R"(/sessions/([^/]+)/kg)",
             guarded([this, send_json](const httplib::Request& req,
                                       httplib::Response& res) {
               send_json(res, kg(req.matches[1]));
             }));
  server.Get(R"(/sessions/([^/]+)/progress)",
             guarded([this](const httplib::Request& req, httplib::Response& res) {
               res.set_content(progress(req.matches[1]), "text/plain");
             }));
  server.Get(R"(/sessions/([^/]+)/events)",
             guarded([this](const httplib::Request& req, httplib::Response& res) {
               std::string id = req.matches[1];
               find(id);
               std::size_t from = 0;
               if (req.has_header("Last-Event-ID")) {
                 from = std::stoull(req.get_header_value("Last-Event-ID")) + 1;
               } else if (req.has_param("from")) {
                 from = std::stoull(req.get_param_value("from"));
               }
               res.set_chunked_content_provider(
                   "text/event-stream",
                   [this, id, cursor = from](std::size_t,
                                             httplib::DataSink& sink) mutable {
                     bool done = false;
                     auto batch = events_from(id, cursor,
                                              std::chrono::milliseconds(500), done);
                     for (const auto& e : batch) {
                       std::string frame = sse_frame(e);
                       if (!sink.write(frame.data(), frame.size())) return false;
                       cursor = e.seq + 1;
                     }
                     if (done && batch.empty()) sink.done();
                     return true;
                   });
             }));
}

}  // namespace kgloop::service
